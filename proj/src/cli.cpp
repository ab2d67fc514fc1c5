#include "latspec/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "latspec/errors.hpp"
#include "latspec/lattice_green.hpp"
#include "latspec/lattice_oracle.hpp"
#include "latspec/output.hpp"
#include "latspec/quadrature.hpp"
#include "latspec/simon_wolff.hpp"
#include "latspec/spectral_solver.hpp"

namespace latspec::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double parse_number(std::string const& text, std::string const& what) {
    std::size_t pos = 0;
    double x = 0.0;
    try {
        x = std::stod(text, &pos);
    } catch (std::exception const&) {
        throw UsageError(what + ": not a number: " + text);
    }
    if (pos != text.size()) throw UsageError(what + ": not a number: " + text);
    return x;
}

std::vector<int> parse_int_list(std::string const& text, std::string const& what) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        double const x = parse_number(item, what);
        if (x != std::round(x)) throw UsageError(what + ": expected integers");
        out.push_back(int(x));
    }
    if (out.empty()) throw UsageError(what + ": empty list");
    return out;
}

std::vector<double> parse_double_list(std::string const& text, std::string const& what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_number(item, what));
    if (out.empty()) throw UsageError(what + ": empty list");
    return out;
}

Json green_json(GreenValue const& g) {
    Json j = Json::object();
    if (g.is_finite()) {
        j["kind"] = "finite";
        j["value"] = g.value;
        j["err_estimate"] = g.err_estimate;
    } else {
        j["kind"] = "divergent";
        j["divergence_exponent"] = g.divergence_exponent;
    }
    return j;
}

Json nullable(std::optional<double> x) { return x ? Json(*x) : Json(nullptr); }

struct Settings {
    int dim = 0;
    QuadratureConfig cfg;
    std::string format = "json";
};

class Session {
public:
    Session(Settings s, OutputRecord& rec) : s_(std::move(s)), rec_(rec) {}

    int dim() const {
        if (s_.dim < 1) throw UsageError("--dim <int> (>= 1) is required");
        return s_.dim;
    }
    QuadratureConfig const& cfg() const { return s_.cfg; }

    double coupling(std::string const& text) {
        double v;
        if (text == "critical") {
            v = critical_coupling(dim(), cfg()).v_c;
        } else {
            v = parse_number(text, "--coupling");
        }
        rec_.inputs["coupling"] = text == "critical" ? Json("critical") : Json(v);
        rec_.inputs["coupling_value"] = v;
        return v;
    }

    // Energy from --energy, or the eigenvalue of --coupling.
    double energy(std::optional<double> energy, std::optional<std::string> const& coupling_text) {
        if (energy) {
            rec_.inputs["energy"] = *energy;
            return *energy;
        }
        if (!coupling_text) throw UsageError("one of --energy or --coupling is required");
        double const v = coupling(*coupling_text);
        auto const e = eigenvalue(dim(), v, cfg());
        if (!e) throw DomainError("no eigenvalue for this coupling");
        rec_.results["E"] = e->E;
        return e->E;
    }

private:
    Settings s_;
    OutputRecord& rec_;
};

Backend backend_from(std::string const& name) {
    if (name == "direct") return Backend::Direct;
    if (name == "laplace") return Backend::Laplace;
    return Backend::Auto;
}

std::string backend_name(Backend b) {
    switch (b) {
    case Backend::Direct: return "direct";
    case Backend::Laplace: return "laplace";
    case Backend::Auto: return "auto";
    }
    return "auto";
}

Json eigen_json(std::optional<EigenSolution> const& e) {
    Json j = Json::object();
    j["E"] = e ? Json(e->E) : Json(nullptr);
    j["kind"] = e ? to_string(e->kind) : "none";
    j["weight"] = e ? Json(e->weight) : Json(nullptr);
    j["residual"] = e ? Json(e->residual) : Json(nullptr);
    return j;
}

Json spectrum_json(SpectrumReport const& r) {
    Json j = Json::object();
    j["dim"] = r.dim;
    j["v"] = r.v;
    j["v_c"] = r.v_c;
    j["regime"] = to_string(r.regime);
    j["pp"] = Json::array();
    if (r.pp) j["pp"].push_back(r.pp->E);
    j["pp_kind"] = r.pp ? to_string(r.pp->kind) : "none";
    j["pp_weight"] = r.pp ? Json(r.pp->weight) : Json(nullptr);
    j["ac"] = Json::array({r.ac_interval[0], r.ac_interval[1]});
    j["ess"] = Json::array({r.ess_interval[0], r.ess_interval[1]});
    j["sc"] = r.sc_empty ? "empty" : "present";
    return j;
}

Json membership_json(SetMembership const& m) {
    Json j = Json::object();
    j["x"] = m.x;
    j["set"] = to_string(m.member_of);
    j["im_limit"] = m.im_limit ? Json(m.im_limit->value) : Json(nullptr);
    j["im_err"] = m.im_limit ? Json(m.im_limit->err_estimate) : Json(nullptr);
    j["im_model"] = m.im_limit ? Json(m.im_limit->model) : Json(nullptr);
    j["J_kind"] = m.J_value ? Json(m.J_value->is_finite() ? "finite" : "divergent") : Json(nullptr);
    j["J"] = m.J_value && m.J_value->is_finite() ? Json(m.J_value->value) : Json(nullptr);
    return j;
}

} // namespace

std::optional<std::string> system_env(std::string const& name) {
    char const* v = std::getenv(name.c_str());
    if (!v) return std::nullopt;
    return std::string(v);
}

int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err, EnvLookup const& env) {
    CLI::App app{"Spectral data of a rank-one perturbed lattice Laplacian", "latspec"};
    app.fallthrough();
    app.require_subcommand(1);

    std::optional<int> dim;
    std::optional<double> tol;
    std::optional<int> threads;
    std::string format = "json";
    std::string quadrature = "auto";
    app.add_option("--dim", dim, "Lattice dimension d");
    app.add_option("--tol", tol, "Relative quadrature tolerance");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--threads", threads, "Worker threads (does not change results)");
    app.add_option("--quadrature", quadrature, "Torus integral backend")
        ->check(CLI::IsMember({"direct", "laplace", "auto"}));

    std::optional<double> energy, x, eps;
    std::optional<std::string> coupling;
    std::string sites_text = "10,20,40", bc_text = "dirichlet", site_text, theta_text;
    int range = 5, grid = 101, points = 0, max_dim = 6;
    double margin = 0.5, oracle_tol = 1e-10;
    bool limit = false;

    auto* green = app.add_subcommand("green", "Green's integrals I_d(E) and J_d(E)");
    green->add_option("--energy", energy, "Energy E")->required();
    auto* vc = app.add_subcommand("vc", "Critical coupling v_c(d)");
    auto* eig = app.add_subcommand("eigenvalue", "Eigenvalue for a coupling");
    eig->add_option("--coupling", coupling, "Coupling v >= 0 or 'critical'")->required();
    auto* cfe = app.add_subcommand("coupling-for-energy", "Coupling whose eigenvalue is E");
    cfe->add_option("--energy", energy, "Energy E >= 1")->required();
    auto* vec = app.add_subcommand("eigenvector", "Eigenvector in position or momentum space");
    vec->add_option("--energy", energy, "Energy E");
    vec->add_option("--coupling", coupling, "Coupling (eigenvalue is solved for)");
    vec->add_option("--range", range, "Sites 0..range along the first axis");
    vec->add_option("--site", site_text, "Single site, comma separated");
    vec->add_option("--theta", theta_text, "Momentum point, comma separated");
    auto* wgt = app.add_subcommand("weight", "Point-mass weight I^2/J");
    wgt->add_option("--energy", energy, "Energy E");
    wgt->add_option("--coupling", coupling, "Coupling (eigenvalue is solved for)");
    auto* cls = app.add_subcommand("classify", "Spectral decomposition for a coupling");
    cls->add_option("--coupling", coupling, "Coupling v >= 0 or 'critical'")->required();
    auto* ds = app.add_subcommand("dos", "Density of states");
    ds->add_option("--x", x, "Point in (-1, 1)");
    ds->add_option("--points", points, "Midpoint grid of this many points in (-1, 1)");
    auto* imr = app.add_subcommand("im-resolvent", "Imaginary part of the free resolvent expectation");
    imr->add_option("--x", x, "Spectral parameter")->required();
    imr->add_option("--eps", eps, "Distance from the real axis");
    imr->add_flag("--limit", limit, "Extrapolate eps -> 0");
    auto* sw = app.add_subcommand("sw-report", "X/Y/Z classification over a grid");
    sw->add_option("--grid", grid, "Number of grid points");
    sw->add_option("--margin", margin, "Grid covers [-1-margin, 1+margin]");
    sw->add_option("--coupling", coupling, "Also classify the eigenvalue of this coupling");
    auto* orc = app.add_subcommand("oracle", "Finite-lattice convergence study");
    orc->add_option("--coupling", coupling, "Coupling v >= 0 or 'critical'")->required();
    orc->add_option("--sizes", sites_text, "Box half widths, comma separated");
    orc->add_option("--bc", bc_text, "Boundary condition")->check(CLI::IsMember({"dirichlet", "periodic"}));
    orc->add_option("--oracle-tol", oracle_tol, "Eigen-residual tolerance");
    auto* thm = app.add_subcommand("theorem-table", "Point spectrum across dimensions and coupling regimes");
    thm->add_option("--max-dim", max_dim, "Largest dimension");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (CLI::ParseError const& e) {
        int const code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    OutputRecord rec;
    rec.command = app.get_subcommands().front()->get_name();
    Settings st;
    try {
        st.cfg.threads = default_thread_count();
        if (auto e = env("LATTICE_SPEC_TOL")) st.cfg.rel_tol = parse_number(*e, "LATTICE_SPEC_TOL");
        if (auto e = env("LATTICE_SPEC_THREADS")) st.cfg.threads = int(parse_number(*e, "LATTICE_SPEC_THREADS"));
        if (tol) st.cfg.rel_tol = *tol;
        if (threads) st.cfg.threads = *threads;
        if (st.cfg.threads < 1) throw UsageError("thread count must be >= 1");
        st.cfg.backend = backend_from(quadrature);
        st.cfg.validate();
        st.dim = dim.value_or(0);
        st.format = format;
        if (dim) rec.inputs["dim"] = *dim;
        rec.inputs["tol"] = st.cfg.rel_tol;
        rec.inputs["quadrature"] = backend_name(st.cfg.backend);
    } catch (std::exception const& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 2;
    }

    Session ss(st, rec);
    auto emit = [&] { out << (st.format == "csv" ? to_csv(rec) : to_json(rec)); };
    auto& R = rec.results;
    auto& cfg = st.cfg;

    try {
        if (app.got_subcommand(green)) {
            int const d = ss.dim();
            double const E = *energy;
            rec.inputs["energy"] = E;
            double const aE = std::abs(E);
            if (aE >= 1.0) {
                auto I = greens_I(d, aE, cfg);
                if (E < 0.0) I.value = -I.value;
                R["I"] = green_json(I);
                R["J"] = green_json(greens_J(d, aE, cfg));
            } else {
                R["I"] = green_json(GreenValue::divergent(-1.0));
                R["J"] = green_json(GreenValue::divergent(-2.0));
            }
            auto const cls_ = aE > 1.0 ? Integrability{true, true} : integrability_class(d, E);
            R["I_finite"] = cls_.I_finite;
            R["J_finite"] = cls_.J_finite;
        } else if (app.got_subcommand(vc)) {
            int const d = ss.dim();
            auto const c = critical_coupling(d, cfg);
            R["v_c"] = c.v_c;
            R["err_estimate"] = c.err_estimate;
            R["method"] = integrability_class(d, 1.0).I_finite ? "quadrature" : "analytic";
        } else if (app.got_subcommand(eig)) {
            int const d = ss.dim();
            double const v = ss.coupling(*coupling);
            auto const e = eigenvalue(d, v, cfg);
            Json const j = eigen_json(e);
            for (auto const& [k, val] : j.items()) R[k] = val;
            if (e) rec.diagnostics.push_back({{"iterations", e->iterations}});
        } else if (app.got_subcommand(cfe)) {
            int const d = ss.dim();
            rec.inputs["energy"] = *energy;
            R["v"] = coupling_for_energy(d, *energy, cfg);
        } else if (app.got_subcommand(vec)) {
            int const d = ss.dim();
            double const E = ss.energy(energy, coupling);
            if (!theta_text.empty()) {
                auto const th = parse_double_list(theta_text, "--theta");
                rec.inputs["theta"] = th;
                R["psi_momentum"] = eigenvector_momentum(d, E, TorusPoint(th));
            } else if (!site_text.empty()) {
                auto const site = parse_int_list(site_text, "--site");
                rec.inputs["site"] = site;
                R["psi"] = eigenvector_position(d, E, site, cfg);
            } else {
                if (range < 0) throw UsageError("--range must be >= 0");
                rec.inputs["range"] = range;
                R["table"] = Json::array();
                std::vector<int> site(d, 0);
                for (int k = 0; k <= range; ++k) {
                    site[0] = k;
                    R["table"].push_back({{"x", k}, {"psi", eigenvector_position(d, E, site, cfg)}});
                }
            }
        } else if (app.got_subcommand(wgt)) {
            int const d = ss.dim();
            double const E = ss.energy(energy, coupling);
            R["weight"] = point_mass_weight(d, E, cfg);
        } else if (app.got_subcommand(cls)) {
            int const d = ss.dim();
            double const v = ss.coupling(*coupling);
            auto const rep = classify_spectrum(d, v, cfg);
            Json const j = spectrum_json(rep);
            for (auto const& [k, val] : j.items()) R[k] = val;
            auto const ic = integrability_class(d, 1.0);
            rec.diagnostics.push_back({{"I_finite_at_edge", ic.I_finite}, {"J_finite_at_edge", ic.J_finite}});
        } else if (app.got_subcommand(ds)) {
            int const d = ss.dim();
            if (x) {
                rec.inputs["x"] = *x;
                auto const r = dos(d, *x, cfg);
                R["x"] = r.x;
                R["rho"] = r.rho;
                R["singular"] = r.singular;
            } else {
                if (points < 1) throw UsageError("dos needs --x or --points >= 1");
                rec.inputs["points"] = points;
                R["table"] = Json::array();
                for (int k = 0; k < points; ++k) {
                    double const xk = -1.0 + 2.0 * (k + 0.5) / points;
                    auto const r = dos(d, xk, cfg);
                    R["table"].push_back({{"x", r.x}, {"rho", r.rho}, {"singular", r.singular}});
                }
            }
        } else if (app.got_subcommand(imr)) {
            int const d = ss.dim();
            rec.inputs["x"] = *x;
            if (!eps && !limit) throw UsageError("im-resolvent needs --eps or --limit");
            if (eps) {
                rec.inputs["eps"] = *eps;
                R["value"] = im_resolvent(d, *x, *eps, cfg);
            }
            if (limit) {
                auto const l = im_limit(d, *x, cfg);
                R["limit"] = l.value;
                R["err_estimate"] = l.err_estimate;
                R["model"] = l.model;
                R["exponent"] = l.exponent;
                for (std::size_t i = 0; i < l.eps.size(); ++i)
                    rec.diagnostics.push_back({{"eps", l.eps[i]}, {"value", l.values[i]}});
            }
        } else if (app.got_subcommand(sw)) {
            int const d = ss.dim();
            rec.inputs["grid"] = grid;
            rec.inputs["margin"] = margin;
            std::optional<double> E;
            if (coupling) {
                auto const e = eigenvalue(d, ss.coupling(*coupling), cfg);
                if (e) E = e->E;
            }
            auto const rep = sc_evidence_report(d, grid, cfg, margin, E);
            R["eigenvalue"] = nullable(E);
            R["violations"] = rep.violations;
            R["z_points"] = rep.z_points;
            R["z_within_band_edges"] = rep.z_within_band_edges;
            R["finding"] = rep.z_within_band_edges && rep.violations.empty()
                               ? "Z is contained in {-1, 1} on the tested grid"
                               : "classification violated on the tested grid";
            R["table"] = Json::array();
            for (auto const& p : rep.points) R["table"].push_back(membership_json(p));
        } else if (app.got_subcommand(orc)) {
            int const d = ss.dim();
            double const v = ss.coupling(*coupling);
            auto const Ns = parse_int_list(sites_text, "--sizes");
            Boundary const bc = bc_text == "periodic" ? Boundary::Periodic : Boundary::Dirichlet;
            rec.inputs["sizes"] = Ns;
            rec.inputs["bc"] = bc_text;
            rec.inputs["oracle_tol"] = oracle_tol;
            auto const e = eigenvalue(d, v, cfg);
            R["E_analytic"] = e ? Json(e->E) : Json(nullptr);
            R["weight_analytic"] = e ? Json(e->weight) : Json(nullptr);
            auto const rows = convergence_study(d, v, Ns, bc, oracle_tol, cfg);
            R["table"] = Json::array();
            for (auto const& r : rows) {
                R["table"].push_back({{"N", r.half_width},
                                      {"lambda", r.lambda},
                                      {"residual", r.residual},
                                      {"deviation", nullable(r.deviation)},
                                      {"origin_weight", r.origin_weight}});
                rec.diagnostics.push_back({{"N", r.half_width}, {"matvecs", r.matvecs}});
            }
        } else if (app.got_subcommand(thm)) {
            if (max_dim < 1 || max_dim > 12) throw UsageError("--max-dim must be in 1..12");
            rec.inputs["max_dim"] = max_dim;
            R["table"] = Json::array();
            for (int d = 1; d <= max_dim; ++d) {
                double const v_c = critical_coupling(d, cfg).v_c;
                std::vector<std::pair<std::string, double>> cases{{"0", 0.0}};
                if (v_c == 0.0) {
                    cases.push_back({"0.5", 0.5});
                    cases.push_back({"1", 1.0});
                } else {
                    cases.push_back({"0.5*v_c", 0.5 * v_c});
                    cases.push_back({"v_c", v_c});
                    cases.push_back({"2*v_c", 2.0 * v_c});
                }
                auto const ic = integrability_class(d, 1.0);
                for (auto const& [label, v] : cases) {
                    auto const rep = classify_spectrum(d, v, cfg);
                    R["table"].push_back({{"dim", d},
                                          {"coupling", label},
                                          {"v", v},
                                          {"v_c", v_c},
                                          {"regime", to_string(rep.regime)},
                                          {"pp", rep.pp ? Json(rep.pp->E) : Json(nullptr)},
                                          {"pp_kind", rep.pp ? to_string(rep.pp->kind) : "none"},
                                          {"weight", rep.pp ? Json(rep.pp->weight) : Json(nullptr)},
                                          {"I_finite_at_edge", ic.I_finite},
                                          {"J_finite_at_edge", ic.J_finite},
                                          {"ac", "[-1,1]"},
                                          {"sc", "empty"}});
                }
            }
        }
    } catch (UsageError const& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (DomainError const& e) {
        err << "domain error: " << e.what() << "\n";
        return 2;
    } catch (NonConvergence const& e) {
        rec.diagnostics.push_back({{"error", "NonConvergence"}, {"message", e.what()}, {"value", e.value()},
                                   {"err_estimate", e.err_estimate()}});
        emit();
        err << "numerical failure: " << e.what() << "\n";
        return 1;
    } catch (IterationLimit const& e) {
        rec.diagnostics.push_back(
            {{"error", "IterationLimit"}, {"message", e.what()}, {"value", e.value()}, {"residual", e.residual()}});
        emit();
        err << "numerical failure: " << e.what() << "\n";
        return 1;
    } catch (NumericalError const& e) {
        rec.diagnostics.push_back({{"error", "NumericalError"}, {"message", e.what()}});
        emit();
        err << "numerical failure: " << e.what() << "\n";
        return 1;
    }
    emit();
    return 0;
}

} // namespace latspec::cli
