#ifndef MBAR_CLI_HPP
#define MBAR_CLI_HPP

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace mbar::cli
{

enum class Format { Table, Json, Csv };

struct RunConfig
{
    std::string command;    // graph, strata, elementary, dplus, qx, bounds, best-bounds, sigma-range
    std::string subcommand; // graph only: validate, genus, contract, cut, delete, aut, canon, iso
    std::vector<std::string> files;
    std::vector<int> edges;

    int g = 0;
    int n = 0;
    int h = 0;
    int size_p = 0;
    std::optional<int> max_edges;
    int characteristic = 0;
    int cap = 0;
    std::string dl_convention = "strict";
    std::string gens;
    bool dump_basis = false;
    std::string a_spec;
    std::string ell_spec;

    Format format = Format::Table;
    std::optional<std::filesystem::path> cache_dir; // nullopt: caching disabled
    int jobs = 1;
};

// Cache directory from $MBAR_CACHE_DIR, else $XDG_CACHE_HOME/mbar, else
// $HOME/.cache/mbar.
std::optional<std::filesystem::path> default_cache_dir();

// Parses argv-style arguments (without the program name). Usage errors are
// written to `err`; returns nullopt and sets `status` in that case.
std::optional<RunConfig> parse_args(const std::vector<std::string> &args, std::ostream &out, std::ostream &err,
                                    int &status);

// Executes a parsed configuration. Computation errors are reported on `err`
// as a JSON object and give a nonzero status.
int run(const RunConfig &config, std::ostream &out, std::ostream &err);

int main(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace mbar::cli

#endif // MBAR_CLI_HPP
