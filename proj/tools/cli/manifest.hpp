#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace maxstop::cli {

/**
 * One `[job]` section of a manifest. `command` names the subcommand; the
 * other keys become `--key value` flags. `n` may be a comma list, in which
 * case the job expands to one invocation per n and `{n}` in the output path is
 * replaced by the game length.
 */
struct ManifestJob {
    int line = 0;  // line of the [job] header
    std::string command;
    std::vector<int> ns;
    std::map<std::string, std::string> options;
    [[nodiscard]] std::vector<std::vector<std::string>> invocations() const;
};

struct RunManifest {
    std::vector<ManifestJob> jobs;
};

/// Format:
///     # comment
///     [job]
///     command = simulate
///     strategy = optimal
///     n = 3, 5, 10
///     runs = 1000000
///     seed = 20180420
///     output = sim_{n}.csv
[[nodiscard]] RunManifest parse_manifest(const std::string& text);
[[nodiscard]] RunManifest read_manifest(const std::string& path);

/// Runs every invocation, up to `parallel` at a time. Each job writes its own
/// output file; job diagnostics go to `err` prefixed with the job line. The
/// result is the largest exit code seen.
int run_manifest(const RunManifest& manifest, int parallel, std::ostream& out, std::ostream& err);

}  // namespace maxstop::cli
