#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qbound/catalog.hpp"
#include "qbound/constraints.hpp"
#include "qbound/errors.hpp"
#include "qbound/geometry.hpp"
#include "qbound/named_sets.hpp"
#include "qbound/serialization.hpp"

namespace qbound {

namespace cli_detail {

inline std::vector<double> parse_csv_doubles(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        try {
            out.push_back(std::stod(cell));
        } catch (const std::exception&) {
            throw ParseError("not a number: '" + cell + "'");
        }
    }
    return out;
}

inline std::uint64_t default_seed() {
    if (const char* env = std::getenv("QBOUND_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw ParseError("QBOUND_SEED is not an unsigned integer");
        }
    }
    return 0;
}

/// Resolve a selector of the form "file:PATH" or a named set.
inline ResolvedSet resolve_selector(const std::string& selector, const SetOptions& opt) {
    if (selector.rfind("file:", 0) == 0)
        return {load_operator_set(selector.substr(5)), {}, "operator set from file"};
    return resolve_named_set(selector, opt);
}

struct CatalogFormatOptions {
    std::string format = "json";
    bool witnesses = false;
};

inline void print_catalog(const std::vector<CatalogRow>& rows,
                          const std::vector<std::pair<std::string, std::vector<Witness>>>& witnesses,
                          const CatalogFormatOptions& fmt, std::ostream& out) {
    if (fmt.format == "csv") {
        out << "name,computed,paper_value,paper_expression,deviation,pass,witness_count\n";
        for (const CatalogRow& r : rows) {
            int wcount = -1;
            for (const auto& [name, ws] : witnesses)
                if (name == r.result.name) wcount = int(ws.size());
            out << r.result.name << ',' << format_number(r.result.value) << ','
                << format_number(*r.result.paper_value) << ",\"" << r.result.paper_expression
                << "\"," << format_scientific(r.result.deviation) << ',' << (r.pass ? 1 : 0) << ','
                << wcount << '\n';
        }
        return;
    }
    json j = json::array();
    for (const CatalogRow& r : rows) {
        json row = {{"name", r.result.name},
                    {"computed", r.result.value},
                    {"paper_value", *r.result.paper_value},
                    {"paper_expression", r.result.paper_expression},
                    {"deviation", r.result.deviation},
                    {"gate", r.gate},
                    {"pass", r.pass}};
        if (!r.result.argopt_angles.empty()) row["argopt_angles"] = r.result.argopt_angles;
        for (const auto& [name, ws] : witnesses)
            if (name == r.result.name) {
                json jw = json::array();
                for (const Witness& w : ws)
                    jw.push_back({{"angles", w.angles}, {"expectations", w.expectations}, {"value", w.value}});
                row["witnesses"] = jw;
            }
        j.push_back(std::move(row));
    }
    out << j.dump(2) << '\n';
}

} // namespace cli_detail

/// Runs the command-line surface; returns the process exit code.
/// 0: success / verdict positive. 1: domain verdict negative or a catalog
/// gate failed. 2: input or usage error.
inline int run_cli(std::vector<std::string> args, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
    CLI::App app{"quantum-constraint and tight-bound toolkit"};
    app.require_subcommand(1);

    std::string format = "json";
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));

    // ---- validate-state ----
    auto* sc_validate = app.add_subcommand("validate-state", "check a matrix against the state conditions");
    std::string matrix_path;
    double tol = 1e-9;
    sc_validate->add_option("--matrix", matrix_path, "matrix file (JSON, or CSV for real entries)")
        ->required();
    sc_validate->add_option("--tol", tol, "positivity tolerance on S_n");

    // ---- qc ----
    auto* sc_qc = app.add_subcommand("qc", "evaluate the constraint polynomials for a state matrix");
    std::string qc_matrix_path;
    sc_qc->add_option("--matrix", qc_matrix_path, "matrix file")->required();

    // ---- membership ----
    auto* sc_member = app.add_subcommand("membership", "test whether an expectation point is allowed");
    std::string member_set, member_point;
    int member_two_j = 2, member_dim = 3, probes = 512;
    double member_tol = 1e-7;
    std::string member_dots;
    sc_member->add_option("--set", member_set, "operator-set selector")->required();
    sc_member->add_option("--point", member_point, "comma-separated expectation values")->required();
    sc_member->add_option("--two-j", member_two_j, "2j for the spin selector");
    sc_member->add_option("--dim", member_dim, "dimension for weyl/mub selectors");
    sc_member->add_option("--dots", member_dots, "a.b,a.c,b.c for qubit-axes");
    sc_member->add_option("--tol", member_tol, "margin tolerance");
    sc_member->add_option("--probes", probes, "probe directions for the support search");

    // ---- catalog ----
    auto* sc_catalog = app.add_subcommand("catalog", "run the named bound catalog");
    std::string only;
    bool with_witnesses = false;
    int grid = 0, restarts = 32, iters = 400;
    sc_catalog->add_option("--only", only, "restrict to one bound or dot-prefix group");
    sc_catalog->add_flag("--witnesses", with_witnesses, "also enumerate distinct optimizers");
    sc_catalog->add_option("--grid", grid, "lattice points per angle (0 = default rule)");
    sc_catalog->add_option("--restarts", restarts, "simplex restarts");
    sc_catalog->add_option("--iters", iters, "simplex iterations per restart");

    // ---- region ----
    auto* sc_region = app.add_subcommand("region", "export boundary samples and a region grid");
    std::string region_set, region_out = "region", region_measure, region_dots;
    int region_two_j = 2, region_dim = 3, resolution = 400, directions = 512;
    double region_bound = 0.0;
    std::uint64_t seed = cli_detail::default_seed();
    sc_region->add_option("--set", region_set, "operator-set selector")->required();
    sc_region->add_option("--two-j", region_two_j, "2j for the spin selector");
    sc_region->add_option("--dim", region_dim, "dimension for weyl/mub selectors");
    sc_region->add_option("--dots", region_dots, "a.b,a.c,b.c for qubit-axes");
    sc_region->add_option("--out", region_out, "output file prefix");
    sc_region->add_option("--resolution", resolution, "grid cells per axis");
    sc_region->add_option("--directions", directions, "boundary sample count");
    sc_region->add_option("--seed", seed, "direction seed");
    sc_region->add_option("--measure", region_measure,
                          "measure for the in_R column: H, u_half, u2, u_max, std")
        ->check(CLI::IsMember({"H", "u_half", "u2", "u_max", "std", ""}));
    sc_region->add_option("--bound", region_bound, "bound value for the measure region");

    // ---- mub ----
    auto* sc_mub = app.add_subcommand("mub", "dump a MUB family and its unbiasedness report");
    int mub_dim = 3;
    std::string mub_state_path;
    std::uint64_t mub_seed = cli_detail::default_seed();
    sc_mub->add_option("--dim", mub_dim, "prime dimension")->required();
    sc_mub->add_option("--state", mub_state_path, "state matrix file for the quadratic check");
    sc_mub->add_option("--seed", mub_seed, "seed for the random check state");

    // ---- dump-set ----
    auto* sc_dump = app.add_subcommand("dump-set", "write an operator set as JSON");
    std::string dump_set, dump_out, dump_dots;
    int dump_two_j = 2, dump_dim = 3;
    sc_dump->add_option("--set", dump_set, "operator-set selector")->required();
    sc_dump->add_option("--out", dump_out, "output path")->required();
    sc_dump->add_option("--two-j", dump_two_j, "2j for the spin selector");
    sc_dump->add_option("--dim", dump_dim, "dimension for weyl/mub selectors");
    sc_dump->add_option("--dots", dump_dots, "a.b,a.c,b.c for qubit-axes");

    std::vector<char*> argv;
    std::vector<std::string> storage = std::move(args);
    storage.insert(storage.begin(), "qbound");
    argv.reserve(storage.size());
    for (std::string& s : storage) argv.push_back(s.data());

    try {
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            out << app.help();
            return 0;
        }
        err << e.what() << '\n';
        return 2;
    }

    try {
        if (*sc_validate) {
            const ComplexMatrix m = load_matrix(matrix_path);
            const ConstraintReport rep = validate_state(DensityState(m), tol);
            json j = {{"hermiticity_residual", rep.hermiticity_residual},
                      {"trace_residual", rep.trace_residual},
                      {"s_values", rep.s_values},
                      {"valid", rep.valid()},
                      {"failed_condition", rep.failure()}};
            if (format == "csv") {
                out << "valid," << (rep.valid() ? 1 : 0) << '\n';
                out << "hermiticity_residual," << format_scientific(rep.hermiticity_residual) << '\n';
                out << "trace_residual," << format_scientific(rep.trace_residual) << '\n';
                for (size_t n = 0; n < rep.s_values.size(); ++n)
                    out << 'S' << (n + 1) << ',' << format_number(rep.s_values[n]) << '\n';
            } else {
                out << j.dump(2) << '\n';
            }
            return rep.valid() ? 0 : 1;
        }

        if (*sc_qc) {
            const ComplexMatrix m = load_matrix(qc_matrix_path);
            const DensityState rho(m);
            const MomentVector mv = moments_of(rho);
            const ConstraintReport rep = newton_s(mv);
            json j = {{"moments", mv.moments},
                      {"s_values", rep.s_values},
                      {"explicit_s234", explicit_s234(mv)},
                      {"positivity", rep.positive}};
            if (m.dim() <= 8) j["weyl_tr2"] = weyl_tr2(weyl_expectations(rho), m.dim());
            if (m.dim() == 3) {
                const cplx t3 = qutrit_tr3_weyl(weyl_expectations(rho));
                j["weyl_tr3"] = {t3.real(), t3.imag()};
            }
            out << j.dump(2) << '\n';
            return rep.positive ? 0 : 1;
        }

        if (*sc_member) {
            SetOptions opt;
            opt.two_j = member_two_j;
            opt.dim = member_dim;
            if (!member_dots.empty()) opt.dots = cli_detail::parse_csv_doubles(member_dots);
            const ResolvedSet rs = cli_detail::resolve_selector(member_set, opt);
            const std::vector<double> point = cli_detail::parse_csv_doubles(member_point);
            if (int(point.size()) != rs.ops.size())
                throw ArityMismatch("point arity " + std::to_string(point.size()) +
                                    " differs from operator count " + std::to_string(rs.ops.size()));
            const MembershipVerdict v = membership(point, rs.ops, member_tol, probes);
            json j = {{"inside", v.inside},
                      {"margin", v.margin},
                      {"witness_direction", v.witness_direction}};
            if (rs.closed_form_inside) j["closed_form_inside"] = rs.closed_form_inside(point);
            out << j.dump(2) << '\n';
            return v.inside ? 0 : 1;
        }

        if (*sc_catalog) {
            OptimizerConfig config;
            config.grid_points = grid;
            config.restarts = restarts;
            config.refine_iterations = iters;
            const std::vector<CatalogRow> rows = run_catalog(config, only);
            std::vector<std::pair<std::string, std::vector<Witness>>> witnesses;
            if (with_witnesses)
                for (const CatalogRow& r : rows)
                    if (r.expected_witnesses > 0 || !only.empty())
                        witnesses.push_back({r.result.name, minimizer_witnesses(r.result.name, config)});
            cli_detail::print_catalog(rows, witnesses, {format, with_witnesses}, out);
            for (const CatalogRow& r : rows)
                if (!r.pass) return 1;
            return 0;
        }

        if (*sc_region) {
            SetOptions opt;
            opt.two_j = region_two_j;
            opt.dim = region_dim;
            if (!region_dots.empty()) opt.dots = cli_detail::parse_csv_doubles(region_dots);
            const ResolvedSet rs = cli_detail::resolve_selector(region_set, opt);
            if (rs.ops.size() > 3) throw TooManyOperators("region export supports at most 3 operators");

            const std::vector<BoundarySample> samples = boundary_sample(rs.ops, directions, seed);
            const std::string boundary_path = region_out + "_boundary.csv";
            {
                std::ofstream f(boundary_path);
                for (int i = 0; i < rs.ops.size(); ++i) f << "dir_" << (i + 1) << ',';
                for (int i = 0; i < rs.ops.size(); ++i) f << "touch_" << (i + 1) << ',';
                f << "support\n";
                for (const BoundarySample& s : samples) {
                    for (double d : s.direction) f << format_number(d) << ',';
                    for (double t : s.touch) f << format_number(t) << ',';
                    f << format_number(s.support) << '\n';
                }
            }

            MeasureSpec spec = MeasureSpec::h();
            if (region_measure == "u_half") spec = MeasureSpec::u(0.5);
            else if (region_measure == "u2") spec = MeasureSpec::u(2.0);
            else if (region_measure == "u_max") spec = MeasureSpec::u_max();
            else if (region_measure == "std") spec = MeasureSpec::std_dev_sum();
            const RegionGrid grid_data =
                measure_region_grid(rs.ops, spec, region_bound, resolution, rs.closed_form_inside);
            const std::string grid_path = region_out + "_grid.csv";
            {
                std::ofstream f(grid_path);
                const char* names[] = {"x", "y", "z"};
                for (int a = 0; a < grid_data.n_axes; ++a) f << names[a] << ',';
                f << "in_E,in_R\n";
                for (std::size_t c = 0; c < grid_data.cell_count(); ++c) {
                    for (double x : grid_data.center(c)) f << format_number(x) << ',';
                    f << int(grid_data.in_e[c]) << ',' << int(grid_data.in_r[c]) << '\n';
                }
            }
            out << json{{"boundary", boundary_path},
                        {"grid", grid_path},
                        {"directions", directions},
                        {"resolution", resolution}}
                       .dump(2)
                << '\n';
            return 0;
        }

        if (*sc_mub) {
            const MubFamily fam = mub_family(mub_dim);
            const DensityState probe = mub_state_path.empty()
                                           ? random_state(mub_dim, mub_dim, mub_seed)
                                           : DensityState(load_matrix(mub_state_path));
            const double quad = mub_quadratic(fam.probabilities(probe));
            json jb = json::array();
            for (const MubBasis& b : fam.bases) {
                json kets = json::array();
                for (const auto& ket : b.kets) {
                    json kj = json::array();
                    for (const cplx& c : ket) kj.push_back({c.real(), c.imag()});
                    kets.push_back(std::move(kj));
                }
                jb.push_back({{"label", b.label}, {"kets", kets}});
            }
            json j = {{"dim", mub_dim},
                      {"unbiasedness_deviation", fam.unbiasedness_deviation()},
                      {"quadratic_value", quad},
                      {"quadratic_satisfied", quad <= 2.0 + 1e-9},
                      {"bases", jb}};
            out << j.dump(2) << '\n';
            return quad <= 2.0 + 1e-9 ? 0 : 1;
        }

        if (*sc_dump) {
            SetOptions opt;
            opt.two_j = dump_two_j;
            opt.dim = dump_dim;
            if (!dump_dots.empty()) opt.dots = cli_detail::parse_csv_doubles(dump_dots);
            const ResolvedSet rs = cli_detail::resolve_selector(dump_set, opt);
            std::ofstream f(dump_out);
            if (!f) throw ParseError("cannot open output file: " + dump_out);
            f << operator_set_to_json(rs.ops).dump(2) << '\n';
            out << json{{"written", dump_out}, {"operators", rs.ops.size()}}.dump(2) << '\n';
            return 0;
        }
    } catch (const ParseError& e) {
        err << "input error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

} // namespace qbound
