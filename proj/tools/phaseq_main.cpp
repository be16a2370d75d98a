// phaseq: batch experiments for flat phase-space quantization.
//
// Subcommands: star, quantize, act, polarize-check, lattice, hbar-scan.
// Exit codes: 0 success, 1 check failure, 2 usage/config error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "phaseq/groupoid.hpp"
#include "phaseq/lattice.hpp"
#include "phaseq/rep.hpp"
#include "phaseq/report.hpp"
#include "phaseq/star.hpp"

using namespace phaseq;

namespace {

struct GlobalOpts {
    int grid_n = 128;
    double extent = 8.0;
    double hbar = 0.5;
    double window_fraction = 0.75;
    std::string out = "phaseq-out";
    long seed = 20240901;
    std::string config_path;
};

void add_globals(CLI::App* cmd, GlobalOpts& g) {
    cmd->add_option("--grid-n", g.grid_n, "samples per axis (even, 16..512)");
    cmd->add_option("--extent", g.extent, "grid half-width L (grid covers [-L,L]^2)");
    cmd->add_option("--hbar", g.hbar, "Planck constant (1e-3..10)");
    cmd->add_option("--window-radius-fraction", g.window_fraction,
                    "window support as a fraction of L");
    cmd->add_option("--out", g.out, "output path prefix");
    cmd->add_option("--seed", g.seed, "seed for randomized suites");
    cmd->add_option("--config", g.config_path, "key=value file overriding flags");
}

void apply_config_file(GlobalOpts& g) {
    if (g.config_path.empty()) return;
    std::ifstream in(g.config_path);
    if (!in) throw std::invalid_argument("config: cannot open " + g.config_path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected key=value, got: " + line);
        const std::string key = line.substr(0, eq), val = line.substr(eq + 1);
        if (key == "grid-n") g.grid_n = std::stoi(val);
        else if (key == "extent") g.extent = std::stod(val);
        else if (key == "hbar") g.hbar = std::stod(val);
        else if (key == "window-radius-fraction") g.window_fraction = std::stod(val);
        else if (key == "out") g.out = val;
        else if (key == "seed") g.seed = std::stol(val);
        else throw std::invalid_argument("config: unknown key: " + key);
    }
}

void validate(const GlobalOpts& g) {
    if (g.grid_n < 16 || g.grid_n > 512 || g.grid_n % 2 != 0)
        throw std::invalid_argument("grid-n must be even and within [16, 512]");
    if (!(g.extent > 0.0)) throw std::invalid_argument("extent must be positive");
    if (!(g.hbar >= 1e-3 && g.hbar <= 10.0))
        throw std::invalid_argument("hbar must lie in [1e-3, 10]");
    if (!(g.window_fraction > 0.0 && g.window_fraction <= 1.0))
        throw std::invalid_argument("window-radius-fraction must lie in (0, 1]");
}

void echo_globals(RunManifest& man, const GlobalOpts& g) {
    man.set("grid-n", long(g.grid_n));
    man.set("extent", g.extent);
    man.set("hbar", g.hbar);
    man.set("window-radius-fraction", g.window_fraction);
    man.set("seed", g.seed);
    man.set("out", g.out);
}

PhaseField load_field(const std::string& spec, const PhaseGrid& grid) {
    if (is_named_field(spec)) return named_field(spec, grid);
    // otherwise treat as a CSV path
    const PhaseField f = field_from_csv(read_text_file(spec));
    if (f.grid != grid)
        throw std::invalid_argument("field CSV grid does not match the configured grid: " + spec);
    return f;
}

std::vector<PhasePoint> parse_targets(const std::string& text) {
    std::vector<PhasePoint> pts;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ';')) {
        if (tok.empty()) continue;
        double q, p;
        if (std::sscanf(tok.c_str(), "%lf,%lf", &q, &p) != 2)
            throw std::invalid_argument("targets: expected q,p;q,p;... got: " + tok);
        pts.push_back({q, p});
    }
    if (pts.empty()) throw std::invalid_argument("targets: empty list");
    return pts;
}

Polarization parse_polarization(const std::string& name) {
    if (name == "position") return Polarization::position();
    if (name == "momentum") return Polarization::momentum();
    if (name == "bargmann") return Polarization::bargmann();
    double c, d;
    if (std::sscanf(name.c_str(), "%lf,%lf", &c, &d) == 2)
        return Polarization::from_real_direction(c, d);
    throw std::invalid_argument("polarization: expected position|momentum|bargmann|c,d");
}

std::function<cplx(cplx)> named_profile(const std::string& name) {
    if (name == "gaussian") return [](cplx t) { return std::exp(-t * t / 2.0); };
    if (name.rfind("hermite-", 0) == 0) {
        const int k = std::stoi(name.substr(8));
        return [k](cplx t) {
            // physicists' Hermite via recurrence, valid for complex argument
            cplx h0 = 1.0, h1 = 2.0 * t;
            if (k == 0) return std::exp(-t * t / 2.0);
            for (int m = 2; m <= k; ++m) {
                const cplx h2 = 2.0 * t * h1 - 2.0 * double(m - 1) * h0;
                h0 = h1;
                h1 = h2;
            }
            return h1 * std::exp(-t * t / 2.0);
        };
    }
    throw std::invalid_argument("profile: expected gaussian or hermite-k");
}

std::string target_values_csv(const std::vector<PhasePoint>& pts, const std::vector<cplx>& vals) {
    char buf[200];
    std::string out = "q,p,re,im\n";
    for (size_t i = 0; i < pts.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", pts[i].q, pts[i].p,
                      vals[i].real(), vals[i].imag());
        out += buf;
    }
    return out;
}

int finish(RunManifest& man, const GlobalOpts& g) {
    const std::string path = g.out + ".json";
    man.outputs.push_back(path);
    write_text_file(path, man.to_json());
    std::cout << path << "\n";
    return man.all_pass() ? 0 : 1;
}

// ---------------------------------------------------------------------------

int cmd_star(const GlobalOpts& g, const std::string& fname, const std::string& gname,
             const std::string& method, int order, const std::string& targets_text, bool svg) {
    const PhaseGrid grid(g.extent, g.grid_n);
    const Hbar hb(g.hbar);
    const PhaseField f = load_field(fname, grid), gg = load_field(gname, grid);

    RunManifest man;
    man.subcommand = "star";
    echo_globals(man, g);
    man.set("f", fname);
    man.set("g", gname);
    man.set("method", method);

    if (method == "direct") {
        if (targets_text.empty())
            throw std::invalid_argument("star --method direct requires --targets");
        const auto pts = parse_targets(targets_text);
        const auto vals = moyal_direct(f, gg, hb, EvaluationSet::of(pts, grid));
        const std::string csv = g.out + ".csv";
        write_text_file(csv, target_values_csv(pts, vals));
        man.outputs.push_back(csv);
        double mx = 0;
        for (const auto& v : vals) mx = std::max(mx, std::abs(v));
        man.checks.push_back({"max-abs-value", mx, 0.0, true});
        return finish(man, g);
    }

    PhaseField prod(grid);
    if (method == "fast") prod = moyal_fast(f, gg, hb);
    else if (method == "series") {
        man.set("order", long(order));
        prod = moyal_series(f, gg, hb, order);
    } else
        throw std::invalid_argument("star: unknown method " + method);

    const std::string csv = g.out + ".csv";
    write_text_file(csv, field_to_csv(prod));
    man.outputs.push_back(csv);
    if (svg) {
        const std::string sv = g.out + ".svg";
        write_text_file(sv, field_to_svg(prod));
        man.outputs.push_back(sv);
    }
    man.checks.push_back({"sup-norm", sup_norm(prod), 0.0, true});
    man.checks.push_back({"sup-norm-interior", sup_norm_interior(prod), 0.0, true});
    return finish(man, g);
}

int cmd_quantize(const GlobalOpts& g, const std::string& fname, bool svg) {
    const PhaseGrid grid(g.extent, g.grid_n);
    const Hbar hb(g.hbar);
    const PairKernel k = quantize(load_field(fname, grid), hb);

    RunManifest man;
    man.subcommand = "quantize";
    echo_globals(man, g);
    man.set("f", fname);
    man.set("trivialization", std::string(PairKernel::trivialization));

    const std::string csv = g.out + ".csv";
    write_text_file(csv, kernel_to_csv(k));
    man.outputs.push_back(csv);
    if (svg) {
        PhaseField kf(grid);
        kf.samples = k.samples;
        const std::string sv = g.out + ".svg";
        write_text_file(sv, field_to_svg(kf));
        man.outputs.push_back(sv);
    }
    // round trip is cheap and catches grid-unsuitable hbar values
    const PhaseField back = dequantize(k, hb);
    const double rt = sup_norm(back - load_field(fname, grid));
    man.checks.push_back({"round-trip-error", rt, 1e-8, rt < 1e-8});
    return finish(man, g);
}

int cmd_act(const GlobalOpts& g, const std::string& fname, const std::string& pol_name,
            const std::string& prof_name, bool svg) {
    const PhaseGrid grid(g.extent, g.grid_n);
    const Hbar hb(g.hbar);
    const PhaseField f = load_field(fname, grid);
    const Polarization pol = parse_polarization(pol_name);
    const Section psi = make_polarized(grid, pol, named_profile(prof_name), hb);
    const Section out = act_kernel(quantize(f, hb), psi, hb);

    RunManifest man;
    man.subcommand = "act";
    echo_globals(man, g);
    man.set("f", fname);
    man.set("polarization", pol_name);
    man.set("profile", prof_name);

    const std::string csv = g.out + ".csv";
    write_text_file(csv, field_to_csv(out));
    man.outputs.push_back(csv);
    if (svg) {
        const std::string sv = g.out + ".svg";
        write_text_file(sv, field_to_svg(out));
        man.outputs.push_back(sv);
    }
    const auto rep = polarization_residual(out, pol, hb);
    man.checks.push_back({"output-polarization-residual", rep.residual, 1e-4,
                          rep.residual < 1e-4});
    return finish(man, g);
}

int cmd_polarize_check(const GlobalOpts& g, const std::string& pol_name,
                       const std::string& prof_name) {
    const PhaseGrid grid(g.extent, g.grid_n);
    const Hbar hb(g.hbar);
    const Polarization pol = parse_polarization(pol_name);
    const Section psi = make_polarized(grid, pol, named_profile(prof_name), hb);

    RunManifest man;
    man.subcommand = "polarize-check";
    echo_globals(man, g);
    man.set("polarization", pol_name);
    man.set("profile", prof_name);

    const auto rep = polarization_residual(psi, pol, hb);
    man.checks.push_back({"form-residual", rep.residual, 1e-8, rep.residual < 1e-8});

    nlohmann::ordered_json j;
    j["polarization"] = pol_name;
    j["residual"] = rep.residual;
    if (pol.is_real()) {
        const double R = grid.extent * std::sqrt(2.0);
        Profile1D prof(R, 2 * grid.n);
        const auto fn = named_profile(prof_name);
        for (int i = 0; i < prof.n; ++i) prof.samples[i] = fn(prof.coord(i));
        const auto ladder = ladder_check(pol, prof, hb);
        j["ladder-errors"] = {{"derivative", ladder.err_deriv_display},
                              {"multiplication", ladder.err_mult_display},
                              {"derivative-doubled", ladder.err_deriv_doubled},
                              {"multiplication-doubled", ladder.err_mult_doubled},
                              {"profile-scaling", ladder.profile_scaling_err}};
        man.checks.push_back({"ladder-derivative-doubled", ladder.err_deriv_doubled, 1e-3,
                              ladder.err_deriv_doubled < 1e-3});
        man.checks.push_back({"ladder-multiplication-doubled", ladder.err_mult_doubled, 1e-3,
                              ladder.err_mult_doubled < 1e-3});
    }
    const std::string rp = g.out + "-report.json";
    write_text_file(rp, j.dump(2) + "\n");
    man.outputs.push_back(rp);
    return finish(man, g);
}

int cmd_lattice(const GlobalOpts& g, int refinement, const std::string& integration,
                int n_per_vertex) {
    const Hbar hb(g.hbar);
    const DiskTriangulation tri = triangulate_disk(refinement);
    const DiskTriangulation tri0 = triangulate_disk(0);

    RunManifest man;
    man.subcommand = "lattice";
    echo_globals(man, g);
    man.set("refinement", long(refinement));
    man.set("integration", integration);

    nlohmann::ordered_json j;
    j["refinement"] = refinement;
    j["V"] = tri.vertex_count;
    j["E"] = tri.edge_count();
    j["F"] = int(tri.triangles.size());
    j["euler-characteristic"] = tri.euler_characteristic();

    const std::vector<std::array<PhasePoint, 3>> triples = {
        {{{0.3, -0.2}, {1.1, 0.7}, {-0.4, 0.9}}},
        {{{-1.0, 0.4}, {0.2, -1.3}, {0.8, 0.5}}},
        {{{0.0, 1.2}, {-0.7, -0.6}, {1.4, -0.1}}},
    };
    double inv_delta = 0.0;
    nlohmann::ordered_json phases = nlohmann::ordered_json::array();
    for (const auto& tr : triples) {
        const cplx k = kernel_fresnel(tri, tr[0], tr[1], tr[2], hb);
        const cplx k0 = kernel_fresnel(tri0, tr[0], tr[1], tr[2], hb);
        inv_delta = std::max(inv_delta, std::abs(k - k0));
        phases.push_back({{"m0", {tr[0].q, tr[0].p}},
                          {"m1", {tr[1].q, tr[1].p}},
                          {"m", {tr[2].q, tr[2].p}},
                          {"phase", std::arg(k)},
                          {"modulus", std::abs(k)}});
    }
    j["kernel-samples"] = phases;
    j["refinement-invariance-delta"] = inv_delta;
    man.checks.push_back({"refinement-invariance", inv_delta, 1e-6, inv_delta < 1e-6});

    if (integration == "quadrature") {
        if (int(tri.interior_vertices().size()) > 3)
            throw std::invalid_argument(
                "lattice: quadrature mode allowed only for <= 3 free vertices");
        const auto ks = kernel_quadrature(tri, triples[0][0], triples[0][1], triples[0][2], hb,
                                          {1e-1, 1e-2, 1e-3}, n_per_vertex);
        const cplx exact = kernel_fresnel(tri, triples[0][0], triples[0][1], triples[0][2], hb);
        nlohmann::ordered_json qs = nlohmann::ordered_json::array();
        double derr = 0.0;
        const double epss[3] = {1e-1, 1e-2, 1e-3};
        for (size_t i = 0; i < ks.size(); ++i) {
            qs.push_back({{"epsilon", epss[i]}, {"re", ks[i].real()}, {"im", ks[i].imag()}});
            derr = std::max(derr, std::abs(ks[i] - exact));
        }
        j["quadrature-kernel"] = qs;
        j["quadrature-vs-fresnel"] = derr;
        man.checks.push_back({"quadrature-vs-fresnel", derr, 1e-6, derr < 1e-6});
    } else if (integration != "fresnel") {
        throw std::invalid_argument("lattice: integration must be fresnel or quadrature");
    }

    const std::string rp = g.out + "-lattice.json";
    write_text_file(rp, j.dump(2) + "\n");
    man.outputs.push_back(rp);
    return finish(man, g);
}

int cmd_hbar_scan(const GlobalOpts& g, const std::string& fname, const std::string& gname,
                  int order, const std::string& hbars_text) {
    const PhaseGrid grid(g.extent, g.grid_n);
    const PhaseField f = load_field(fname, grid), gg = load_field(gname, grid);

    std::vector<double> hbars;
    {
        std::stringstream ss(hbars_text);
        std::string tok;
        while (std::getline(ss, tok, ',')) hbars.push_back(std::stod(tok));
    }
    const ScanResult res = hbar_scan(f, gg, hbars, order);

    RunManifest man;
    man.subcommand = "hbar-scan";
    echo_globals(man, g);
    man.set("f", fname);
    man.set("g", gname);
    man.set("order", long(order));
    man.set("hbars", hbars_text);

    std::string csv = "hbar,sup_err\n";
    char buf[80];
    std::vector<std::pair<double, double>> rows;
    for (const auto& r : res.rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", r.hbar, r.sup_err);
        csv += buf;
        rows.emplace_back(r.hbar, r.sup_err);
    }
    write_text_file(g.out + ".csv", csv);
    write_text_file(g.out + ".svg", scan_to_svg(rows));
    man.outputs.push_back(g.out + ".csv");
    man.outputs.push_back(g.out + ".svg");
    man.checks.push_back({"log-log-slope", res.slope, res.required_slope(),
                          res.slope_ok()});
    return finish(man, g);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"flat phase-space quantization experiments"};
    app.require_subcommand(1);

    GlobalOpts g;
    std::string fname = "gaussian", gname = "gaussian", method = "fast";
    std::string targets_text, pol_name = "position", prof_name = "gaussian";
    std::string hbars_text = "0.2,0.1,0.05,0.025", integration = "fresnel";
    int order = 1, refinement = 0, n_per_vertex = 10;
    bool svg = false;

    auto* star = app.add_subcommand("star", "star product of two fields");
    add_globals(star, g);
    star->add_option("--f", fname, "left field (named or CSV path)");
    star->add_option("--g", gname, "right field (named or CSV path)");
    star->add_option("--method", method, "fast | direct | series");
    star->add_option("--order", order, "series order (<= 8)");
    star->add_option("--targets", targets_text, "q,p;q,p;... (direct method)");
    star->add_flag("--svg", svg, "emit an SVG heatmap");

    auto* quant = app.add_subcommand("quantize", "pair-groupoid kernel of a field");
    add_globals(quant, g);
    quant->add_option("--f", fname, "field (named or CSV path)");
    quant->add_flag("--svg", svg, "emit an SVG heatmap");

    auto* act = app.add_subcommand("act", "act with a quantized field on a polarized section");
    add_globals(act, g);
    act->add_option("--f", fname, "observable field");
    act->add_option("--pol", pol_name, "position | momentum | bargmann | c,d");
    act->add_option("--profile", prof_name, "gaussian | hermite-k");
    act->add_flag("--svg", svg, "emit an SVG heatmap");

    auto* pc = app.add_subcommand("polarize-check", "polarized-section residual and ladder report");
    add_globals(pc, g);
    pc->add_option("--pol", pol_name, "position | momentum | bargmann | c,d");
    pc->add_option("--profile", prof_name, "gaussian | hermite-k");

    auto* lat = app.add_subcommand("lattice", "triangulated-disk path-integral checks");
    add_globals(lat, g);
    lat->add_option("--refinement", refinement, "midpoint refinement level");
    lat->add_option("--integration", integration, "fresnel | quadrature");
    lat->add_option("--n-per-vertex", n_per_vertex, "quadrature points per axis per vertex");

    auto* scan = app.add_subcommand("hbar-scan", "classical-limit error scan");
    add_globals(scan, g);
    scan->add_option("--f", fname, "left field");
    scan->add_option("--g", gname, "right field");
    scan->add_option("--order", order, "series order compared against the fast product");
    scan->add_option("--hbars", hbars_text, "comma-separated decreasing hbar list");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        std::cerr << e.what() << "\n";
        std::cerr << app.help() << "\n";
        return 2;
    }

    try {
        apply_config_file(g);
        validate(g);
        if (star->parsed())
            return cmd_star(g, fname, gname, method, order, targets_text, svg);
        if (quant->parsed()) return cmd_quantize(g, fname, svg);
        if (act->parsed()) return cmd_act(g, fname, pol_name, prof_name, svg);
        if (pc->parsed()) return cmd_polarize_check(g, pol_name, prof_name);
        if (lat->parsed()) return cmd_lattice(g, refinement, integration, n_per_vertex);
        if (scan->parsed()) return cmd_hbar_scan(g, fname, gname, order, hbars_text);
        std::cerr << "unknown subcommand\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
