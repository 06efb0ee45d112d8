#include "cli/manifest.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "cli/cli.hpp"
#include "maxstop/error.hpp"

namespace maxstop::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<int> parse_n_list(const std::string& value, int line) {
    std::vector<int> ns;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (item.empty() || used != item.size() || v < 1) {
            throw InvalidInput("line " + std::to_string(line) + ": bad game length '" + item + "'");
        }
        ns.push_back(v);
    }
    if (ns.empty()) throw InvalidInput("line " + std::to_string(line) + ": empty n list");
    return ns;
}

void check_job(const ManifestJob& job) {
    const std::string where = "job at line " + std::to_string(job.line);
    if (job.command.empty()) throw InvalidInput(where + ": missing command");
    if (job.command == "batch") throw InvalidInput(where + ": manifests cannot nest");
    if ((job.command == "simulate" || job.command == "compare") && !job.options.count("seed")) {
        throw InvalidInput(where + ": simulation jobs need a seed");
    }
    if (!job.options.count("output")) throw InvalidInput(where + ": missing output");
}

}  // namespace

std::vector<std::vector<std::string>> ManifestJob::invocations() const {
    std::vector<std::vector<std::string>> all;
    const std::vector<int> lengths = ns.empty() ? std::vector<int>{0} : ns;
    for (int n : lengths) {
        std::vector<std::string> args{command};
        if (n > 0) {
            args.push_back("--n");
            args.push_back(std::to_string(n));
        }
        for (const auto& [key, raw] : options) {
            std::string value = raw;
            if (key == "output" || key == "cutoffs-out") {
                for (auto pos = value.find("{n}"); pos != std::string::npos; pos = value.find("{n}")) {
                    value.replace(pos, 3, std::to_string(n));
                }
                args.push_back(key == "output" ? "-o" : "--cutoffs-out");
                args.push_back(value);
                continue;
            }
            args.push_back("--" + key);
            // Boolean flags are written `strict = true`.
            if (value == "true") continue;
            if (value == "false") {
                args.pop_back();
                continue;
            }
            args.push_back(value);
        }
        all.push_back(std::move(args));
    }
    return all;
}

RunManifest parse_manifest(const std::string& text) {
    RunManifest m;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string s = trim(raw);
        if (s.empty() || s[0] == '#' || s[0] == ';') continue;
        if (s == "[job]") {
            m.jobs.push_back(ManifestJob{line, {}, {}, {}});
            continue;
        }
        if (s.front() == '[') throw InvalidInput("line " + std::to_string(line) + ": unknown section " + s);
        const auto eq = s.find('=');
        if (eq == std::string::npos) {
            throw InvalidInput("line " + std::to_string(line) + ": expected key = value");
        }
        if (m.jobs.empty()) throw InvalidInput("line " + std::to_string(line) + ": key outside a [job]");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty()) throw InvalidInput("line " + std::to_string(line) + ": empty key");
        auto& job = m.jobs.back();
        if (key == "command") {
            job.command = value;
        } else if (key == "n") {
            job.ns = parse_n_list(value, line);
        } else {
            if (job.options.count(key)) {
                throw InvalidInput("line " + std::to_string(line) + ": duplicate key '" + key + "'");
            }
            job.options[key] = value;
        }
    }
    if (m.jobs.empty()) throw InvalidInput("manifest has no [job] sections");
    for (const auto& j : m.jobs) check_job(j);
    return m;
}

RunManifest read_manifest(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InvalidInput("cannot open manifest '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_manifest(ss.str());
}

int run_manifest(const RunManifest& manifest, int parallel, std::ostream& out, std::ostream& err) {
    struct Task {
        int line;
        std::vector<std::string> args;
    };
    std::vector<Task> tasks;
    for (const auto& job : manifest.jobs) {
        for (auto& a : job.invocations()) tasks.push_back({job.line, std::move(a)});
    }
    std::vector<int> codes(tasks.size(), exit_ok);
    std::vector<std::string> logs(tasks.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            std::ostringstream o;
            std::ostringstream e;
            codes[i] = run(tasks[i].args, o, e);
            logs[i] = o.str() + e.str();
        }
    };
    const int width = std::clamp(parallel, 1, static_cast<int>(std::max<std::size_t>(tasks.size(), 1)));
    std::vector<std::thread> pool;
    for (int t = 1; t < width; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    int worst = exit_ok;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (!logs[i].empty()) {
            std::istringstream lines(logs[i]);
            for (std::string l; std::getline(lines, l);) err << "job " << tasks[i].line << ": " << l << '\n';
        }
        worst = std::max(worst, codes[i]);
    }
    out << tasks.size() << " job(s) run, exit " << worst << '\n';
    return worst;
}

}  // namespace maxstop::cli
