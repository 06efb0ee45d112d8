#include "cli/output.hpp"

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <thread>

#include "maxstop/error.hpp"

namespace maxstop::cli {

namespace fs = std::filesystem;

std::string resolve_output_path(const std::string& path) {
    const fs::path p(path);
    if (p.is_absolute()) return path;
    if (const char* dir = std::getenv(output_dir_env); dir != nullptr && *dir != '\0') {
        return (fs::path(dir) / p).string();
    }
    return path;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    static std::atomic<unsigned> counter{0};
    const fs::path target(path);
    if (target.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(target.parent_path(), ec);
    }
    const auto tag = std::hash<std::thread::id>{}(std::this_thread::get_id()) ^ counter.fetch_add(1);
    fs::path tmp = target;
    tmp += ".tmp" + std::to_string(tag);
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw InvalidInput("cannot write '" + tmp.string() + "'");
        f << content;
        f.flush();
        if (!f) throw InvalidInput("write failed for '" + tmp.string() + "'");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw InvalidInput("cannot move output into place at '" + path + "'");
    }
}

void emit(std::ostream& out, const std::string& path, const std::string& content) {
    if (path.empty()) {
        out << content;
    } else {
        write_file_atomic(resolve_output_path(path), content);
    }
}

}  // namespace maxstop::cli
