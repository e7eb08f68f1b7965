// Command-line front end: parses material/geometry configs, dispatches to
// the energy engines and emits tabular results; `verify` runs the
// cross-route validation suite.

#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>
#include <json.hpp>

#include "modesum/io.hpp"
#include "modesum/lifshitz.hpp"
#include "modesum/modes/identity.hpp"
#include "modesum/modes/real_spectrum.hpp"
#include "modesum/modes/resonances.hpp"
#include "modesum/polder.hpp"
#include "modesum/verify.hpp"

using namespace modesum;
using nlohmann::json;
using io::Cell;

namespace {

struct GlobalOpts {
    std::string config_path;
    std::string out_path;
    std::string format = "csv";
    double tol = 1e-9;
    unsigned long seed = 7;
    int threads = 1;  // 1 keeps outputs bit-reproducible across machines
};

json load_config(const GlobalOpts& g) {
    if (g.config_path.empty()) return json::object();
    std::ifstream in(g.config_path);
    if (!in) throw ConfigError("cannot open config: " + g.config_path);
    json j;
    in >> j;
    return j;
}

struct Sink {
    std::ofstream file;
    std::ostream* os = &std::cout;
};

Sink open_sink(const GlobalOpts& g, const json& cfg) {
    Sink s;
    std::string path = g.out_path;
    if (path.empty() && cfg.contains("output"))
        path = cfg["output"].value("path", "");
    if (!path.empty()) {
        s.file.open(path);
        if (!s.file) throw ConfigError("cannot open output file: " + path);
        s.os = &s.file;
    }
    return s;
}

std::string fmt_of(const GlobalOpts& g, const json& cfg) {
    if (cfg.contains("output") && cfg["output"].contains("format") &&
        g.format == "csv")
        return cfg["output"].value("format", "csv");
    return g.format;
}

PlanarCavity cavity_from(const json& cfg) {
    if (!cfg.contains("material") || !cfg.contains("geometry"))
        throw ConfigError("config needs material and geometry blocks");
    return io::parse_cavity(cfg["geometry"], io::parse_material(cfg["material"]));
}

std::string route_name(Route r) {
    switch (r) {
        case Route::matsubara: return "matsubara";
        case Route::zero_T: return "zero_T";
        case Route::real_frequency: return "real_frequency";
        case Route::mode_sum: return "mode_sum";
        case Route::complex_mode_sum: return "complex_mode_sum";
    }
    return "?";
}

int cmd_lifshitz(const GlobalOpts& g) {
    const json cfg = load_config(g);
    PlanarCavity base = cavity_from(cfg);
    std::vector<double> gaps{base.gap};
    if (cfg.contains("gaps")) gaps = cfg["gaps"].get<std::vector<double>>();
    const std::string route = cfg.value("route", "zero_T");
    const double tol = cfg.value("tolerance", g.tol);

    Sink sink = open_sink(g, cfg);
    io::TableWriter w(*sink.os, fmt_of(g, cfg),
                      {"route", "gap", "slab_thickness",
                       "temperature_wavenumber", "value", "abs_error",
                       "matsubara_terms"});
    for (double L : gaps) {
        PlanarCavity cav = base;
        cav.gap = L;
        std::vector<EnergyResult> results;
        if (route == "matsubara" || route == "all")
            results.push_back(lifshitz::free_energy_matsubara(cav, tol));
        if (route == "zero_T" || route == "all")
            results.push_back(lifshitz::energy_zero_T(cav, tol));
        if (route == "real_frequency" || route == "all")
            results.push_back(lifshitz::free_energy_real_frequency(
                cav, cfg.value("omega_max", 400.0), std::max(tol, 1e-3),
                g.threads));
        if (route == "pressure") {
            const double p = lifshitz::pressure(cav, tol);
            w.row({std::string("pressure"), L,
                   cav.slab_thickness ? Cell(*cav.slab_thickness)
                                      : Cell(std::string("bulk")),
                   cav.temperature_wavenumber, p, 0.0, 0L});
            continue;
        }
        if (results.empty())
            throw ConfigError("route must be matsubara|zero_T|real_frequency|"
                              "pressure|all");
        for (const auto& r : results)
            w.row({route_name(r.route), L,
                   cav.slab_thickness ? Cell(*cav.slab_thickness)
                                      : Cell(std::string("bulk")),
                   cav.temperature_wavenumber, r.value, r.abs_error,
                   r.matsubara_terms});
    }
    return 0;
}

int cmd_modes(const GlobalOpts& g) {
    const json cfg = load_config(g);
    PlanarCavity cav = cavity_from(cfg);
    std::vector<Channel> channels;
    if (cfg.contains("channels"))
        for (const auto& c : cfg["channels"])
            channels.push_back(io::parse_channel(c));
    else if (cfg.contains("channel"))
        channels.push_back(io::parse_channel(cfg["channel"]));
    else
        throw ConfigError("modes: provide channel or channels");
    const double L_ref = cfg.value("L_ref", 20.0 * cav.gap);
    const double omega_max = cfg.value("omega_max", 60.0 / cav.gap);

    Sink sink = open_sink(g, cfg);
    io::TableWriter w(*sink.os, fmt_of(g, cfg),
                      {"route", "polarization", "k", "gap", "L_ref",
                       "omega_max", "value", "contour_value", "cutoff_drift",
                       "tail_bound", "modes_gap", "modes_ref"});
    for (const Channel& ch : channels) {
        modes::SpectrumOptions opt;
        opt.validate_counts = cfg.value("validate_counts", false);
        const auto ms =
            modes::sum_over_modes_energy(cav, ch, L_ref, omega_max, opt);
        const double oracle = modes::channel_contour_energy(cav, ch, L_ref);
        w.row({std::string("mode_sum"),
               std::string(ch.pol == Polarization::TE ? "TE" : "TM"), ch.k,
               cav.gap, L_ref, omega_max, ms.value, oracle, ms.cutoff_drift,
               ms.tail_bound, ms.modes_gap, ms.modes_ref});
    }
    return 0;
}

int cmd_complex_modes(const GlobalOpts& g, bool quasistatic_flag) {
    const json cfg = load_config(g);
    PlanarCavity cav = cavity_from(cfg);
    std::vector<Channel> channels;
    if (cfg.contains("channels"))
        for (const auto& c : cfg["channels"])
            channels.push_back(io::parse_channel(c));
    else if (cfg.contains("channel"))
        channels.push_back(io::parse_channel(cfg["channel"]));
    else
        throw ConfigError("complex-modes: provide channel or channels");

    modes::ResonanceOptions opt;
    opt.quasistatic = quasistatic_flag || cfg.value("quasistatic", true);
    numerics::Rectangle region{0.0, 2.5, -0.7, -1e-7};
    if (cfg.contains("region")) {
        const auto& r = cfg["region"];
        region = {r.at("re_min").get<double>(), r.at("re_max").get<double>(),
                  r.at("im_min").get<double>(), r.at("im_max").get<double>()};
    }
    const double lambda = cfg.value("lambda", 1.0);

    Sink sink = open_sink(g, cfg);
    io::TableWriter w(*sink.os, fmt_of(g, cfg),
                      {"route", "kind", "polarization", "k", "re", "im",
                       "value", "error"});
    for (const Channel& ch : channels) {
        auto set = modes::find_resonances(cav, ch, region, opt);
        const std::string pol = ch.pol == Polarization::TE ? "TE" : "TM";
        for (const auto& z : set.complex_pairs)
            w.row({std::string("complex_mode_sum"), std::string("pair"), pol,
                   ch.k, z.real(), z.imag(), 0.0, 0.0});
        for (double xi : set.imaginary_modes)
            w.row({std::string("complex_mode_sum"), std::string("eddy"), pol,
                   ch.k, 0.0, -xi, 0.0, 0.0});
        if (ch.pol == Polarization::TM && opt.quasistatic) {
            auto ref = modes::reference_resonances(cav, ch, region, opt);
            modes::GeneralizedSumDetails d;
            const double e = modes::generalized_mode_sum(set, ref, lambda, &d);
            const double oracle = modes::quasistatic_channel_lifshitz(cav, ch);
            w.row({std::string("complex_mode_sum"), std::string("energy"), pol,
                   ch.k, 0.0, 0.0, e, std::fabs(e - oracle)});
        }
    }
    return 0;
}

int cmd_casimir_polder(const GlobalOpts& g) {
    const json cfg = load_config(g);
    if (!cfg.contains("dipole") || !cfg.contains("material"))
        throw ConfigError("casimir-polder: provide dipole and material blocks");
    const auto& dj = cfg["dipole"];
    polder::GaussianDipole d{dj.at("m0").get<double>(),
                             dj.at("K0").get<double>(),
                             dj.at("q").get<double>(),
                             dj.at("a").get<double>()};
    polder::HalfSpace hs{io::parse_material(cfg["material"]),
                         cfg.at("z0").get<double>()};
    std::vector<double> z0s{hs.distance};
    if (cfg.contains("z0_sweep"))
        z0s = cfg["z0_sweep"].get<std::vector<double>>();
    const std::string mode = cfg.value("mode", "exact");
    const double tol = cfg.value("tolerance", g.tol);

    Sink sink = open_sink(g, cfg);
    io::TableWriter w(*sink.os, fmt_of(g, cfg),
                      {"route", "mode", "z0", "energy", "force", "error"});
    for (double z : z0s) {
        polder::HalfSpace h2 = hs;
        h2.distance = z;
        const bool exact = mode == "exact";
        const double e = exact ? polder::cp_energy_exact(d, h2, tol)
                               : polder::cp_energy_perturbative(d, h2, tol);
        const double f = polder::cp_force(
            d, h2,
            exact ? polder::ForceMode::exact : polder::ForceMode::perturbative,
            tol);
        w.row({std::string("casimir_polder"), mode, z, e, f,
               std::fabs(e) * tol});
    }
    return 0;
}

int cmd_identity(const GlobalOpts& g, int sweep) {
    const json cfg = load_config(g);
    const int n = cfg.value("sweep", sweep);
    const unsigned long seed = cfg.value("seed", g.seed);

    Sink sink = open_sink(g, cfg);
    io::TableWriter w(*sink.os, fmt_of(g, cfg),
                      {"case", "re_omega0", "im_omega0", "family",
                       "cutoff_scale", "lhs", "rhs", "gap"});
    long idx = 0;
    double worst = 0.0;
    for (const auto& c : modes::make_identity_sweep(n, seed)) {
        const auto r = modes::identity_check(c);
        const double s =
            c.cutoff_scale > 0 ? c.cutoff_scale : 10.0 * std::abs(c.omega0);
        w.row({idx++, c.omega0.real(), c.omega0.imag(),
               std::string(c.f == modes::IdentityFunction::linear_rational_cutoff
                               ? "linear_rational_cutoff"
                               : "even_rational"),
               s, r.lhs, r.rhs, r.gap});
        worst = std::max(worst, r.gap);
    }
    std::cerr << "max gap over " << n << " cases: " << io::format_double(worst)
              << "\n";
    return 0;
}

int cmd_verify(const GlobalOpts& g) {
    const json cfg = load_config(g);
    Sink sink = open_sink(g, cfg);
    const bool to_file = sink.os != &std::cout;
    std::unique_ptr<io::TableWriter> w;
    if (to_file)
        w = std::make_unique<io::TableWriter>(
            *sink.os, fmt_of(g, cfg),
            std::vector<std::string>{"id", "name", "pass", "measured",
                                     "threshold", "seconds", "note"});
    bool all = true;
    auto on_done = [&](const verify::CriterionResult& r) {
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << ". " << r.name
                  << "  measured " << io::format_double(r.measured)
                  << " (bound " << io::format_double(r.threshold) << ", "
                  << io::format_double(r.seconds) << " s)";
        if (!r.note.empty()) std::cout << "  -- " << r.note;
        std::cout << "\n" << std::flush;
        if (w)
            w->row({static_cast<long>(r.id), r.name,
                    std::string(r.pass ? "true" : "false"), r.measured,
                    r.threshold, r.seconds, r.note});
        all = all && r.pass;
    };
    verify::run_all(g.threads, g.seed, on_done);
    std::cout << (all ? "all criteria passed" : "SOME CRITERIA FAILED")
              << "\n";
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Casimir and Casimir-Polder energies by four cross-validating "
        "routes: Matsubara summation, real-frequency integration, the "
        "literal sum over real modes of a discrete-bath cavity, and the "
        "generalized sum over complex resonances"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--config", g.config_path, "JSON run configuration");
    app.add_option("--out", g.out_path, "output file (default: stdout)");
    app.add_option("--format", g.format, "csv or jsonl")
        ->check(CLI::IsMember({"csv", "jsonl"}));
    app.add_option("--tol", g.tol, "engine tolerance");
    app.add_option("--seed", g.seed, "seed for random property sweeps");
    app.add_option("--threads", g.threads,
                   "worker threads (1 for bit-reproducible output)");

    auto* lif = app.add_subcommand("lifshitz",
                                   "closed-system energy routes for a cavity");
    auto* mod = app.add_subcommand(
        "modes", "literal zero-point mode sum per transverse channel");
    auto* cm = app.add_subcommand("complex-modes",
                                  "resonances and the generalized sum");
    bool quasistatic = false;
    cm->add_flag("--quasistatic", quasistatic,
                 "validated quasistatic family (kappa -> k)");
    auto* cp = app.add_subcommand("casimir-polder",
                                  "dipole above a half-space");
    auto* idc = app.add_subcommand("identity-check",
                                   "sum-over-poles identity sweep");
    int sweep = 50;
    idc->add_option("--sweep", sweep, "number of random cases");
    auto* ver = app.add_subcommand("verify", "cross-route acceptance suite");
    for (CLI::App* sc : {lif, mod, cm, cp, idc, ver}) sc->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(lif)) return cmd_lifshitz(g);
        if (app.got_subcommand(mod)) return cmd_modes(g);
        if (app.got_subcommand(cm)) return cmd_complex_modes(g, quasistatic);
        if (app.got_subcommand(cp)) return cmd_casimir_polder(g);
        if (app.got_subcommand(idc)) return cmd_identity(g, sweep);
        if (app.got_subcommand(ver)) return cmd_verify(g);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        nlohmann::json err{{"error", e.what()}};
        std::cerr << err.dump() << "\n";
        return 1;
    }
    return 2;
}
