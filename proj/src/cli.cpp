#include <mbar/cli.hpp>

#include <mbar/bounds.hpp>
#include <mbar/dyer_lashof.hpp>
#include <mbar/series.hpp>
#include <mbar/stable_graph.hpp>
#include <mbar/target_spaces.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#ifndef MBAR_VERSION
#define MBAR_VERSION "dev"
#endif

namespace mbar::cli
{

namespace fs = std::filesystem;
using nlohmann::json;

namespace
{

constexpr const char *kCacheTag = "strata-cache-v1";

// Failure of the requested computation (as opposed to a usage error).
struct RunError : std::runtime_error
{
    RunError(std::string kind, const std::string &message) : std::runtime_error(message), kind(std::move(kind)) {}
    std::string kind;
};

std::uint64_t fnv1a(const std::string &text)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

json read_json_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw RunError("io", "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw RunError("parse", path + ": " + e.what());
    }
}

StableGraph read_graph(const std::string &path)
{
    try {
        return graph_from_json(read_json_file(path));
    } catch (const json::exception &e) {
        throw RunError("parse", path + ": " + e.what());
    }
}

json violation_json(const Violation &v)
{
    json j{{"rule", rule_name(v.rule)}, {"message", v.message}};
    j["vertex"] = v.vertex >= 0 ? json(v.vertex) : json(nullptr);
    j["half_edge"] = v.half_edge >= 0 ? json(v.half_edge) : json(nullptr);
    return j;
}

json split_json(const SplitGraph &split)
{
    json components = json::array();
    for (const auto &c : split.components) {
        json jc{{"vertices", c.vertices}, {"stable", c.stable()}};
        if (c.violation)
            jc["violation"] = violation_json(*c.violation);
        components.push_back(std::move(jc));
    }
    return json{{"graph", split.graph}, {"components", std::move(components)}};
}

void print_json(std::ostream &out, const json &j) { out << j.dump(2) << "\n"; }

// ------------------------------------------------------------------ graph

int run_graph(const RunConfig &c, std::ostream &out)
{
    const std::string &sub = c.subcommand;
    if (sub == "iso") {
        if (c.files.size() != 2)
            throw RunError("usage", "graph iso needs exactly two files");
        const bool iso = is_isomorphic(read_graph(c.files[0]), read_graph(c.files[1]));
        if (c.format == Format::Json)
            print_json(out, json{{"isomorphic", iso}});
        else
            out << (iso ? "true" : "false") << "\n";
        return 0;
    }
    if (c.files.size() != 1)
        throw RunError("usage", "graph " + sub + " needs exactly one file");
    const StableGraph graph = read_graph(c.files[0]);

    if (sub == "validate") {
        const auto v = validate(graph);
        if (c.format == Format::Json) {
            json j{{"ok", !v.has_value()}};
            if (v)
                j["violation"] = violation_json(*v);
            print_json(out, j);
        } else if (v) {
            out << "violation " << rule_name(v->rule) << " vertex=" << v->vertex << " half_edge=" << v->half_edge << ": "
                << v->message << "\n";
        } else {
            out << "ok\n";
        }
        return v ? 1 : 0;
    }
    if (const auto v = validate(graph, {.allow_disconnected = true}); v && sub != "genus")
        throw RunError("invalid-graph", std::string(rule_name(v->rule)) + ": " + v->message);
    if (sub == "genus") {
        const int gg = genus(graph);
        if (c.format == Format::Json)
            print_json(out, json{{"genus", gg}});
        else
            out << gg << "\n";
        return 0;
    }
    if (sub == "contract") {
        print_json(out, json(contract_edges(graph, c.edges)));
        return 0;
    }
    if (sub == "cut") {
        print_json(out, split_json(cut_edges(graph, c.edges)));
        return 0;
    }
    if (sub == "delete") {
        print_json(out, split_json(delete_edges(graph, c.edges)));
        return 0;
    }
    if (sub == "aut") {
        const auto group = automorphisms(graph);
        if (c.format == Format::Json) {
            json gens = json::array();
            for (const auto &a : group.generators)
                gens.push_back(json{{"half_edges", a.half_edges}, {"vertices", a.vertices}});
            print_json(out, json{{"order", group.order.str()}, {"generators", std::move(gens)}});
        } else {
            out << "order " << group.order << "\n";
            out << "generators " << group.generators.size() << "\n";
        }
        return 0;
    }
    if (sub == "canon") {
        const auto iso = canonical_form(graph);
        if (c.format == Format::Json)
            print_json(out, json{{"canonical", iso.canonical_encoding}});
        else
            out << iso.canonical_encoding << "\n";
        return 0;
    }
    throw RunError("usage", "unknown graph subcommand " + sub);
}

// ------------------------------------------------------------------ strata

json stratum_json(const Stratum &s)
{
    return json{{"edges", s.representative.edge_count()}, {"canonical", s.iso.canonical_encoding}, {"graph", s.representative}};
}

std::optional<fs::path> strata_cache_file(const RunConfig &c)
{
    if (!c.cache_dir)
        return std::nullopt;
    std::ostringstream key;
    key << kCacheTag << "|" << MBAR_VERSION << "|g=" << c.g << "|n=" << c.n << "|max_edges=";
    if (c.max_edges)
        key << *c.max_edges;
    else
        key << "none";
    std::ostringstream name;
    name << "strata-" << std::hex << std::setw(16) << std::setfill('0') << fnv1a(key.str()) << ".jsonl";
    return *c.cache_dir / name.str();
}

std::optional<std::vector<Stratum>> load_strata(const fs::path &file)
{
    std::ifstream in(file);
    if (!in)
        return std::nullopt;
    std::vector<Stratum> out;
    try {
        for (std::string line; std::getline(in, line);) {
            if (line.empty())
                continue;
            const json j = json::parse(line);
            out.push_back({GraphIsoClass{j.at("canonical").get<std::string>()}, graph_from_json(j.at("graph"))});
        }
    } catch (const std::exception &) {
        return std::nullopt; // unreadable cache entries are recomputed
    }
    return out;
}

void store_strata(const fs::path &file, const std::vector<Stratum> &strata)
{
    std::error_code ec;
    fs::create_directories(file.parent_path(), ec);
    fs::path tmp = file;
    tmp += ".tmp" + std::to_string(fnv1a(file.string() + std::to_string(std::rand())));
    {
        std::ofstream os(tmp);
        if (!os)
            return;
        for (const auto &s : strata)
            os << stratum_json(s).dump() << "\n";
    }
    fs::rename(tmp, file, ec);
    if (ec)
        fs::remove(tmp, ec);
}

int run_strata(const RunConfig &c, std::ostream &out)
{
    const auto cache_file = strata_cache_file(c);
    std::optional<std::vector<Stratum>> strata;
    if (cache_file)
        strata = load_strata(*cache_file);
    if (!strata) {
        strata = enumerate_stable_graphs(c.g, c.n, c.max_edges, c.jobs);
        if (cache_file)
            store_strata(*cache_file, *strata);
    }
    if (c.format == Format::Json) {
        json arr = json::array();
        for (const auto &s : *strata)
            arr.push_back(stratum_json(s));
        print_json(out, arr);
    } else {
        const char *sep = c.format == Format::Csv ? "," : "\t";
        out << "index" << sep << "edges" << sep << "vertices" << sep << "canonical\n";
        for (std::size_t i = 0; i < strata->size(); ++i) {
            const auto &s = (*strata)[i];
            out << i << sep << s.representative.edge_count() << sep << s.representative.vertex_count() << sep;
            if (c.format == Format::Csv)
                out << '"' << s.iso.canonical_encoding << '"';
            else
                out << s.iso.canonical_encoding;
            out << "\n";
        }
    }
    return 0;
}

// ------------------------------------------------------------------ divisors

int print_components(const RunConfig &c, const std::vector<BoundaryComponent> &list, std::ostream &out)
{
    if (c.format == Format::Json) {
        json arr = json::array();
        for (const auto &a : list)
            arr.push_back(json{{"name", a.name()}, {"g_alpha", a.g_alpha()}});
        print_json(out, arr);
        return 0;
    }
    const char *sep = c.format == Format::Csv ? "," : "\t";
    out << "component" << sep << "g_alpha\n";
    for (const auto &a : list) {
        if (c.format == Format::Csv)
            out << '"' << a.name() << '"';
        else
            out << a.name();
        out << sep << a.g_alpha() << "\n";
    }
    return 0;
}

// ------------------------------------------------------------------ qx

GradedDims parse_gens(const std::string &text)
{
    GradedDims gens;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        if (item.empty())
            continue;
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw RunError("usage", "generator spec '" + item + "' must be degree:count");
        try {
            std::size_t p1 = 0, p2 = 0;
            const std::string ds = item.substr(0, colon), cs = item.substr(colon + 1);
            const int degree = std::stoi(ds, &p1);
            const long long count = std::stoll(cs, &p2);
            if (p1 != ds.size() || p2 != cs.size())
                throw std::invalid_argument(item);
            gens.add(degree, BigInt(count));
        } catch (const ContractError &) {
            throw;
        } catch (const std::exception &) {
            throw RunError("usage", "generator spec '" + item + "' must be degree:count");
        }
    }
    return gens;
}

void print_series(const RunConfig &c, const PoincareSeries &s, std::ostream &out, json extra = json::object())
{
    if (c.format == Format::Json) {
        json j = s;
        for (auto &[k, v] : extra.items())
            j[k] = v;
        print_json(out, j);
        return;
    }
    const char *sep = c.format == Format::Csv ? "," : "\t";
    out << "degree" << sep << "dim\n";
    for (int d = 0; d <= s.cap(); ++d)
        out << d << sep << s[d] << "\n";
}

int run_qx(const RunConfig &c, std::ostream &out)
{
    const FieldSpec field(c.characteristic);
    const DLConvention conv = parse_convention(c.dl_convention);
    const GradedDims gens = parse_gens(c.gens);
    if (c.dump_basis) {
        if (field.is_char_zero())
            throw RunError("usage", "--dump-basis needs a positive characteristic");
        for (const auto &[deg, mult] : gens.entries()) {
            for_each_dl_word(deg, field.characteristic(), c.cap, conv, [&](const DLWord &w) {
                json j = w;
                j["generator_degree"] = deg;
                out << j.dump() << "\n";
            });
        }
        return 0;
    }
    print_series(c, qx_homology_series(gens, field, c.cap, conv), out,
                 json{{"char", c.characteristic}, {"dl_convention", convention_name(conv)}});
    return 0;
}

// ------------------------------------------------------------------ bounds

std::string csv_quote(const std::string &s) { return "\"" + s + "\""; }

std::string witness_name(const LevelMap &A) { return A.ell_spec(); }

int run_bounds(const RunConfig &c, std::ostream &out)
{
    if (c.a_spec.empty())
        throw RunError("usage", "bounds needs --A");
    const LevelMap A = parse_level_map(c.a_spec, c.ell_spec);
    const auto report = betti_lower_bounds(c.g, c.n, A, FieldSpec(c.characteristic), c.cap, parse_convention(c.dl_convention));
    if (c.format == Format::Json) {
        print_json(out, json(report));
        return 0;
    }
    if (c.format == Format::Csv) {
        out << "degree,bound,witness\n";
        for (const auto &[d, b] : report.bounds)
            out << d << "," << b << "," << csv_quote(witness_name(A)) << "\n";
        return 0;
    }
    std::string m;
    for (std::size_t i = 0; i < report.optimal_m.size(); ++i)
        m += (i ? "," : "") + A.selections()[i].alpha.name() + ":" + std::to_string(report.optimal_m[i]);
    out << "# g=" << c.g << " n=" << c.n << " A=" << A.a_spec() << " ell=" << A.ell_spec() << " char=" << c.characteristic
        << " c=" << to_string(report.c) << " c_real=" << to_string(report.c_real) << " optimal_m=" << m << "\n";
    out << "degree\tbound\n";
    for (const auto &[d, b] : report.bounds)
        if (d > 0 && b > 0)
            out << d << "\t" << b << "\n";
    return 0;
}

int run_best_bounds(const RunConfig &c, std::ostream &out)
{
    const auto report = best_bounds(c.g, c.n, FieldSpec(c.characteristic), c.cap, parse_convention(c.dl_convention), c.jobs);
    if (c.format == Format::Json) {
        print_json(out, json(report));
        return 0;
    }
    const bool csv = c.format == Format::Csv;
    if (!csv)
        out << "# g=" << c.g << " n=" << c.n << " char=" << c.characteristic
            << " max_c=" << (report.max_c ? to_string(*report.max_c) : "none") << " pairs=" << report.pairs_considered << "\n";
    const char *sep = csv ? "," : "\t";
    out << "degree" << sep << "bound" << sep << "witness\n";
    for (const auto &d : report.degrees)
        out << d.degree << sep << d.bound << sep << (csv ? csv_quote(witness_name(d.witness)) : witness_name(d.witness))
            << "\n";
    return 0;
}

int run_sigma_range(const RunConfig &c, std::ostream &out)
{
    const auto r = sigma_quotient_range(c.g, c.h, c.size_p);
    if (c.format == Format::Json)
        print_json(out, json{{"g", c.g}, {"h", c.h}, {"sizeP", c.size_p}, {"range", to_string(r.degree_bound)}, {"min_n", r.min_n}});
    else if (c.format == Format::Csv)
        out << "range,min_n\n" << to_string(r.degree_bound) << "," << r.min_n << "\n";
    else
        out << "range\t" << to_string(r.degree_bound) << "\nmin_n\t" << r.min_n << "\n";
    return 0;
}

} // namespace

std::optional<fs::path> default_cache_dir()
{
    if (const char *dir = std::getenv("MBAR_CACHE_DIR"); dir && *dir)
        return fs::path(dir);
    if (const char *xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
        return fs::path(xdg) / "mbar";
    if (const char *home = std::getenv("HOME"); home && *home)
        return fs::path(home) / ".cache" / "mbar";
    return std::nullopt;
}

std::optional<RunConfig> parse_args(const std::vector<std::string> &args, std::ostream &out, std::ostream &err,
                                    int &status)
{
    RunConfig c;
    std::string format = "table";
    std::string cache_dir;
    bool no_cache = false;

    CLI::App app{"Stable graphs, Dyer-Lashof homology and Betti-number lower bounds for moduli of stable curves", "mbar"};
    app.require_subcommand(1);
    app.set_version_flag("--version", MBAR_VERSION);

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "json", "csv"}));
        sub->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
    };
    auto add_gn = [&](CLI::App *sub) {
        sub->add_option("--g", c.g, "Genus")->required()->check(CLI::NonNegativeNumber);
        sub->add_option("--n", c.n, "Number of marked points")->required()->check(CLI::NonNegativeNumber);
    };
    auto add_field = [&](CLI::App *sub) {
        sub->add_option("--char", c.characteristic, "Field characteristic (0 or a prime)")->required();
        sub->add_option("--cap", c.cap, "Degree cap")->required()->check(CLI::NonNegativeNumber);
        sub->add_option("--dl-convention", c.dl_convention, "Dyer-Lashof excess rule")
            ->check(CLI::IsMember({"strict", "paper"}));
    };

    auto *graph = app.add_subcommand("graph", "Operations on graph JSON files");
    graph->require_subcommand(1);
    const std::pair<const char *, const char *> graph_ops[] = {
        {"validate", "Check the stability and well-formedness rules"},
        {"genus", "Arithmetic genus"},
        {"contract", "Contract the given edges"},
        {"cut", "Cut the given edges into leg pairs"},
        {"delete", "Delete the given edges and flag unstable components"},
        {"aut", "Automorphism group order and generators"},
        {"canon", "Canonical encoding"},
        {"iso", "Isomorphism test for two graphs"},
    };
    for (const auto &[name, help] : graph_ops) {
        auto *sub = graph->add_subcommand(name, help);
        sub->add_option("files", c.files, "Graph JSON file(s)")->required();
        if (std::string(name) == "contract" || std::string(name) == "cut" || std::string(name) == "delete")
            sub->add_option("--edges", c.edges, "Edges, named by one of their half-edges")->delimiter(',');
        add_common(sub);
        sub->callback([&c, name] { c.subcommand = name; });
    }

    auto *strata = app.add_subcommand("strata", "Enumerate boundary strata (stable graphs) of type (g, n)");
    add_gn(strata);
    strata->add_option("--max-edges", c.max_edges, "Edge-count bound")->check(CLI::NonNegativeNumber);
    strata->add_option("--cache-dir", cache_dir, "Cache directory (default: $MBAR_CACHE_DIR)");
    strata->add_flag("--no-cache", no_cache, "Bypass the enumeration cache");
    add_common(strata);

    auto *elementary = app.add_subcommand("elementary", "Irreducible boundary divisors");
    add_gn(elementary);
    add_common(elementary);

    auto *dplus = app.add_subcommand("dplus", "Self-intersecting boundary divisors");
    add_gn(dplus);
    add_common(dplus);

    auto *qx = app.add_subcommand("qx", "Poincare series of H_*(QX) from generator degrees of reduced H_*(X)");
    qx->add_option("--gens", c.gens, "Generators as degree:count,...")->required();
    add_field(qx);
    qx->add_flag("--dump-basis", c.dump_basis, "Print the Dyer-Lashof basis words as JSON lines");
    add_common(qx);

    auto *bounds = app.add_subcommand("bounds", "Betti-number lower bounds for one (A, l)");
    add_gn(bounds);
    bounds->add_option("--A", c.a_spec, "Selection, e.g. irr,sep:2")->required();
    bounds->add_option("--ell", c.ell_spec, "Levels, e.g. irr=1,sep:2=0");
    add_field(bounds);
    add_common(bounds);

    auto *best = app.add_subcommand("best-bounds", "Per-degree best bounds over all (A, l)");
    add_gn(best);
    add_field(best);
    add_common(best);

    auto *sigma = app.add_subcommand("sigma-range", "Surjectivity range on the symmetric quotient");
    sigma->set_help_flag("--help", "Print this help message and exit"); // -h would shadow --h
    sigma->add_option("--g", c.g, "Genus")->required();
    sigma->add_option("--h", c.h, "Genus of the smaller side")->required();
    sigma->add_option("--sizeP", c.size_p, "Number of legs on the smaller side")->required()->check(CLI::NonNegativeNumber);
    add_common(sigma);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
            status = app.exit(e, out, err);
        } else {
            err << json{{"error", {{"kind", "usage"}, {"message", e.what()}}}}.dump() << "\n";
            status = 2;
        }
        return std::nullopt;
    }

    for (auto *sub : app.get_subcommands())
        c.command = sub->get_name();
    c.format = format == "json" ? Format::Json : format == "csv" ? Format::Csv : Format::Table;
    if (!no_cache)
        c.cache_dir = cache_dir.empty() ? default_cache_dir() : std::optional<fs::path>(cache_dir);
    status = 0;
    return c;
}

int run(const RunConfig &c, std::ostream &out, std::ostream &err)
{
    try {
        if (c.jobs < 1)
            throw RunError("usage", "--jobs must be at least 1");
        if (c.cap < 0)
            throw RunError("usage", "--cap must be nonnegative");
        if (c.command == "graph")
            return run_graph(c, out);
        if (c.command == "strata")
            return run_strata(c, out);
        if (c.command == "elementary")
            return print_components(c, enumerate_elementary(c.g, c.n), out);
        if (c.command == "dplus")
            return print_components(c, d_plus(c.g, c.n), out);
        if (c.command == "qx")
            return run_qx(c, out);
        if (c.command == "bounds")
            return run_bounds(c, out);
        if (c.command == "best-bounds")
            return run_best_bounds(c, out);
        if (c.command == "sigma-range")
            return run_sigma_range(c, out);
        throw RunError("usage", "unknown command '" + c.command + "'");
    } catch (const RunError &e) {
        err << json{{"error", {{"kind", e.kind}, {"message", e.what()}}}}.dump() << "\n";
        return e.kind == "usage" ? 2 : 1;
    } catch (const ContractError &e) {
        err << json{{"error", {{"kind", "contract"}, {"message", e.what()}}}}.dump() << "\n";
        return 1;
    } catch (const std::exception &e) {
        err << json{{"error", {{"kind", "internal"}, {"message", e.what()}}}}.dump() << "\n";
        return 1;
    }
}

int main(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    int status = 0;
    const auto config = parse_args(args, out, err, status);
    if (!config)
        return status;
    return run(*config, out, err);
}

} // namespace mbar::cli
