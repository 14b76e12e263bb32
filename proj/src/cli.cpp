#include "riesz/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "riesz/equilibrium.hpp"
#include "riesz/errors.hpp"
#include "riesz/fekete.hpp"
#include "riesz/serialize.hpp"
#include "riesz/sphere.hpp"

namespace riesz::cli {

using io::Json;

namespace {

const std::map<std::string, std::vector<std::string>>& table() {
    static const std::map<std::string, std::vector<std::string>> t = {
        {"sphere-energy", {"d", "s", "format", "output"}},
        {"signed-sphere", {"d", "s", "q", "R", "pole", "grid", "format", "output"}},
        {"signed-cap", {"d", "s", "q", "R", "pole", "t", "grid", "format", "output"}},
        {"phi-scan", {"d", "s", "q", "R", "pole", "grid", "tmin", "tmax", "format", "output"}},
        {"critical-t", {"d", "s", "q", "R", "pole", "grid", "format", "output"}},
        {"fekete", {"d", "s", "n", "q", "R", "pole", "multistarts", "seed", "threads", "gtol",
                    "maxiter", "format", "output"}},
        {"four-point-scan", {"d", "s", "q", "kmin", "kmax", "free", "multistarts", "seed", "threads",
                             "format", "output"}},
        {"separation", {"d", "s", "plus", "minus", "r", "n", "q", "R", "format", "output"}},
        {"verify", {"suite", "d", "s", "q", "R", "pole", "grid", "format", "output"}},
        {"figure-data", {"kind", "d", "s", "q", "R", "pole", "mode", "grid", "kmin", "kmax", "free",
                         "multistarts", "seed", "threads", "format", "output"}},
    };
    return t;
}

// Typed access to the raw option map; records every resolved value.
class Params {
public:
    Params(const std::string& cmd, const std::map<std::string, std::string>& raw) : raw_(raw) {
        const auto& allowed = options_for(cmd);
        for (const auto& [k, v] : raw)
            if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
                throw DomainError("option --" + k + " is not accepted by " + cmd);
    }

    double num(const std::string& k, std::optional<double> def = std::nullopt) {
        auto it = raw_.find(k);
        double v;
        if (it == raw_.end()) {
            if (!def) throw DomainError("missing required option --" + k);
            v = *def;
        } else {
            v = parse(k, it->second);
        }
        resolved_[k] = io::number(v);
        return v;
    }

    int integer(const std::string& k, std::optional<int> def = std::nullopt) {
        auto it = raw_.find(k);
        long v;
        if (it == raw_.end()) {
            if (!def) throw DomainError("missing required option --" + k);
            v = *def;
        } else {
            const double x = parse(k, it->second);
            if (x != std::floor(x) || std::fabs(x) > 1e9)
                throw DomainError("option --" + k + " must be an integer");
            v = static_cast<long>(x);
        }
        resolved_[k] = v;
        return static_cast<int>(v);
    }

    std::string str(const std::string& k, const std::string& def) {
        auto it = raw_.find(k);
        const std::string v = it == raw_.end() ? def : it->second;
        resolved_[k] = v;
        return v;
    }

    RieszParameter kernel(std::optional<double> s_def = 1.0) {
        const int d = integer("d", 2);
        auto it = raw_.find("s");
        if (it != raw_.end() && it->second == "log") {
            resolved_["s"] = "log";
            return RieszParameter::logarithmic(d);
        }
        return RieszParameter::riesz(d, num("s", s_def));
    }

    Pole pole(const std::string& def) {
        const std::string v = str("pole", def);
        if (v != "north" && v != "south" && v != "n" && v != "s")
            throw DomainError("--pole must be north or south");
        return pole_from_string(v);
    }

    std::string format(const std::string& def, std::initializer_list<const char*> ok) {
        const std::string f = str("format", def);
        for (const char* o : ok)
            if (f == o) return f;
        throw DomainError("unsupported --format " + f);
    }

    const Json& resolved() const { return resolved_; }

private:
    static double parse(const std::string& k, const std::string& s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            throw DomainError("option --" + k + ": not a number: " + s);
        }
        if (used != s.size() || !std::isfinite(v)) throw DomainError("option --" + k + ": not a number: " + s);
        return v;
    }

    const std::map<std::string, std::string>& raw_;
    Json resolved_ = Json::object();
};

std::string csv_header(const std::string& cmd, const Json& params) {
    std::string out = "# " + cmd;
    for (const auto& [k, v] : params.items()) {
        if (k == "output" || k == "format") continue;
        out += " " + k + "=" + (v.is_string() ? v.get<std::string>() : v.dump());
    }
    return out + "\n";
}

Json envelope(const std::string& cmd, const Json& params, Json result) {
    Json j;
    j["command"] = cmd;
    Json p = params;
    p.erase("output");
    j["params"] = p;
    j["result"] = std::move(result);
    return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json samples_json(const std::vector<std::pair<double, double>>& s) {
    Json arr = Json::array();
    for (const auto& [x, v] : s) arr.push_back(Json::array({io::number(x), io::number(v)}));
    return arr;
}

std::string samples_csv(const std::vector<std::pair<double, double>>& s, const char* cols) {
    std::string out = std::string(cols) + "\n";
    for (const auto& [x, v] : s) out += io::csv_row({x, v}) + "\n";
    return out;
}

Json cap_json(const CapEquilibrium& eq, int grid) {
    Json j;
    j["t"] = io::number(eq.t);
    j["pole"] = to_string(eq.field.pole);
    j["phi"] = io::number(eq.phi);
    j["mass"] = io::number(eq.mass());
    j["is_positive"] = eq.is_positive;
    j["boundary_charge"] = eq.boundary_charge ? io::number(*eq.boundary_charge) : Json(nullptr);
    j["density"] = samples_json(eq.density_samples(grid));
    return j;
}

AxialPointField field_of(Params& P, const RieszParameter& p, double q_def, const std::string& pole_def) {
    const double q = P.num("q", q_def);
    const double R = P.num("R", 2.0);
    const Pole pole = P.pole(pole_def);
    return AxialPointField::make(p, q, R, pole);
}

OptimizerOptions optimizer(Params& P) {
    OptimizerOptions o;
    o.multistarts = P.integer("multistarts", 64);
    o.seed = static_cast<std::uint64_t>(P.integer("seed", 1));
    o.threads = P.integer("threads", 0);
    if (o.multistarts < 1) throw DomainError("--multistarts must be >= 1");
    if (o.threads < 0) throw DomainError("--threads must be >= 0");
    return o;
}

std::string finish(Params& P, const std::string& cmd, const std::string& fmt, Json result,
                   const std::string& csv_body) {
    if (fmt == "json") return dump(envelope(cmd, P.resolved(), std::move(result)));
    return csv_header(cmd, P.resolved()) + csv_body;
}

// ---------------------------------------------------------------- subcommands

std::string cmd_sphere_energy(Params& P) {
    const auto p = P.kernel();
    const std::string fmt = P.format("json", {"json", "csv"});
    const double W = p.is_log() ? sphere::log_energy(p.d) : sphere::sphere_energy(p);
    Json r;
    r["W"] = io::number(W);
    return finish(P, "sphere-energy", fmt, r, "W\n" + io::csv_number(W) + "\n");
}

std::string cmd_signed_sphere(Params& P) {
    const auto p = P.kernel();
    const auto f = field_of(P, p, -1.0, "south");
    const int grid = P.integer("grid", 21);
    const std::string fmt = P.format("json", {"json", "csv"});
    if (grid < 2) throw DomainError("--grid must be >= 2");
    const auto se = signed_eq_sphere(f);
    const auto eq = sphere_as_cap(f);
    Json r;
    r["W"] = io::number(se.W);
    r["U_b"] = io::number(se.U_b);
    r["constant"] = io::number(se.constant);
    r["density_south"] = io::number(se.density(-1.0));
    r["density_north"] = io::number(se.density(1.0));
    r["mass"] = io::number(eq.mass());
    if (f.q <= 0.0) r["full_sphere_support"] = support_is_full_sphere(f);
    else r["full_sphere_support"] = nullptr;
    std::vector<std::pair<double, double>> s;
    for (int k = 0; k < grid; ++k) {
        const double x = -1.0 + 2.0 * k / (grid - 1);
        s.emplace_back(x, se.density(x));
    }
    r["density"] = samples_json(s);
    return finish(P, "signed-sphere", fmt, r, samples_csv(s, "x,density"));
}

CapEquilibrium cap_for(const AxialPointField& f, double t) {
    if (t >= 1.0) return sphere_as_cap(f);
    if (!f.p.is_log() && f.p.s == f.p.d - 2) return limiting_cap_equilibrium(f, t);
    return cap_signed_equilibrium(f, t);
}

std::string cmd_signed_cap(Params& P) {
    const auto p = P.kernel();
    const auto f = field_of(P, p, -5.0, "south");
    const double t = P.num("t", 0.0);
    const int grid = P.integer("grid", 21);
    const std::string fmt = P.format("json", {"json", "csv"});
    if (grid < 2) throw DomainError("--grid must be >= 2");
    const auto eq = cap_for(f, t);
    return finish(P, "signed-cap", fmt, cap_json(eq, grid),
                  samples_csv(eq.density_samples(grid), "x,density"));
}

std::string cmd_phi_scan(Params& P) {
    const auto p = P.kernel();
    const auto f = field_of(P, p, -5.0, "south");
    const int grid = P.integer("grid", 41);
    const double tmin = P.num("tmin", -0.99);
    const double tmax = P.num("tmax", 1.0);
    const std::string fmt = P.format("csv", {"json", "csv"});
    if (grid < 2) throw DomainError("--grid must be >= 2");
    if (!(tmin > -1.0 && tmax <= 1.0 && tmin < tmax)) throw DomainError("need -1 < tmin < tmax <= 1");
    Json rows = Json::array();
    std::string csv = "t,phi,rhs,diff\n";
    for (int k = 0; k < grid; ++k) {
        const double t = tmin + (tmax - tmin) * k / (grid - 1);
        const double phi = phi_of_t(f, t);
        const double rhs = phi_boundary_rhs(f, t);
        rows.push_back(Json{{"t", io::number(t)}, {"phi", io::number(phi)}, {"rhs", io::number(rhs)},
                            {"diff", io::number(phi - rhs)}});
        csv += io::csv_row({t, phi, rhs, phi - rhs}) + "\n";
    }
    return finish(P, "phi-scan", fmt, rows, csv);
}

std::string cmd_critical_t(Params& P) {
    const auto p = P.kernel();
    const auto f = field_of(P, p, -5.0, "south");
    const int grid = P.integer("grid", 21);
    const std::string fmt = P.format("json", {"json", "csv"});
    if (grid < 2) throw DomainError("--grid must be >= 2");
    const auto r = critical_t(f);
    Json j;
    j["t_c"] = io::number(r.t_c);
    j["F"] = io::number(r.F);
    j["root_residual"] = io::number(r.root_residual);
    j["sign_changes"] = r.sign_changes;
    j["diagnostic"] = r.diagnostic;
    j["measure"] = cap_json(r.measure, grid);
    const std::string csv = "t_c,F,root_residual,sign_changes\n" +
                            io::csv_row({r.t_c, r.F, r.root_residual, double(r.sign_changes)}) + "\n";
    return finish(P, "critical-t", fmt, j, csv);
}

std::string cmd_fekete(Params& P) {
    const auto p = P.kernel();
    const int n = P.integer("n");
    const double q = P.num("q", 0.0);
    const double R = P.num("R", 2.0);
    const Pole pole = P.pole("north");
    auto o = optimizer(P);
    o.gtol = P.num("gtol", 1e-10);
    o.max_iter = P.integer("maxiter", 20000);
    const std::string fmt = P.format("json", {"json", "csv"});
    if (n < 2) throw DomainError("--n must be >= 2");
    if (!(R >= 1.0)) throw DomainError("--R must be >= 1");
    const auto Q = q == 0.0 ? ExternalFieldSpec::none() : ExternalFieldSpec::point(p.d, q, R, pole);
    const auto r = minimize_fekete(p.d, n, Q, p, o);
    std::string csv;
    for (int k = 0; k <= p.d; ++k) csv += (k ? ",x" : "x") + std::to_string(k);
    csv += "\n";
    for (const auto& x : r.config.points()) csv += io::csv_row(x) + "\n";
    return finish(P, "fekete", fmt, io::configuration_json(r, Q, p), csv);
}

struct ScanRow {
    double R;
    FourPointReport rep;
};

std::vector<ScanRow> four_scan(Params& P, RieszParameter& p_out, double& q_out, bool& free_out) {
    p_out = P.kernel();
    q_out = P.num("q", 1.0 / 3.0);
    const int kmin = P.integer("kmin", 1);
    const int kmax = P.integer("kmax", 20);
    free_out = P.integer("free", 1) != 0;
    const auto o = optimizer(P);
    if (kmin < 0 || kmax < kmin) throw DomainError("need 0 <= kmin <= kmax");
    std::vector<ScanRow> rows;
    for (int k = kmin; k <= kmax; ++k) {
        const double R = 1.0 + k / 10.0;
        rows.push_back({R, four_point_best(q_out, R, p_out, free_out, o)});
    }
    return rows;
}

std::string cmd_four_point_scan(Params& P) {
    RieszParameter p;
    double q;
    bool with_free;
    const auto rows = four_scan(P, p, q, with_free);
    const std::string fmt = P.format("csv", {"json", "csv"});
    Json arr = Json::array();
    std::string csv = "R,E_A,E_B,E_C,winner,E_free,free_kind,agrees\n";
    for (const auto& [R, rep] : rows) {
        Json j;
        j["R"] = io::number(R);
        j["E_A"] = io::number(rep.A.energy);
        j["t_A"] = io::number(rep.A.t);
        j["E_B"] = io::number(rep.B.energy);
        j["t_B"] = Json::array({io::number(rep.B.t), io::number(rep.B.tau)});
        j["E_C"] = io::number(rep.C.energy);
        j["t_C"] = io::number(rep.C.t);
        j["winner"] = std::string(1, letter(rep.winner));
        j["E_free"] = rep.has_free ? io::number(rep.free_energy) : Json(nullptr);
        j["free_kind"] = rep.free_kind;
        j["agrees"] = rep.agrees;
        j["putative"] = true;
        arr.push_back(j);
        csv += io::csv_row({R, rep.A.energy, rep.B.energy, rep.C.energy}) + "," + letter(rep.winner) +
               "," + (rep.has_free ? io::csv_number(rep.free_energy) : std::string("")) + "," +
               rep.free_kind + "," + (rep.agrees ? "1" : "0") + "\n";
    }
    return finish(P, "four-point-scan", fmt, arr, csv);
}

std::string cmd_separation(Params& P) {
    const auto p = P.kernel();
    const std::string fmt = P.format("json", {"json", "csv"});
    Json r;
    r["kappa"] = io::number(kappa(p.d));
    std::vector<std::string> cols{"kappa"};
    std::vector<double> vals{kappa(p.d)};
    if (!p.is_log() && p.s > p.d) {
        const int n = P.integer("n");
        const double q = P.num("q", 0.0);
        const double R = P.num("R", 2.0);
        const double g = hyper_singular_g(n, q, R, p);
        const double b = hyper_singular_bound(n, q, R, p);
        r["g"] = io::number(g);
        r["bound"] = io::number(b);
        r["g_limit"] = io::number(std::pow(p.s - p.d, 1.0 / p.s));
        cols.insert(cols.end(), {"g", "bound"});
        vals.insert(vals.end(), {g, b});
    } else {
        SignedMeasureSpec spec;
        spec.plus_mass = P.num("plus", 0.0);
        spec.minus_mass = P.num("minus", 0.0);
        spec.r = P.num("r", 2.0);
        const auto c = separation_constant(spec, p);
        r["K"] = io::number(c.K);
        r["c_sigma"] = io::number(c.c_sigma);
        r["n_threshold"] = io::number(c.n_threshold);
        cols.insert(cols.end(), {"K", "c_sigma", "n_threshold"});
        vals.insert(vals.end(), {c.K, c.c_sigma, c.n_threshold});
    }
    std::string head;
    for (std::size_t i = 0; i < cols.size(); ++i) head += (i ? "," : "") + cols[i];
    return finish(P, "separation", fmt, r, head + "\n" + io::csv_row(vals) + "\n");
}

struct Check {
    std::string name;
    bool pass;
    std::string detail;
};

std::string fmt_g(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

std::vector<Check> run_suite(const std::string& suite, const AxialPointField& f, int grid) {
    const bool all = suite == "all";
    if (!all && suite != "variational" && suite != "mass" && suite != "max-principle")
        throw DomainError("unknown --suite " + suite + " (all, variational, mass, max-principle)");
    const auto ex = critical_t(f);
    std::vector<Check> out;
    if (all || suite == "variational") {
        const auto rep = verify_variational(ex, altitude_grid(grid));
        out.push_back({"variational", rep.pass,
                       "t_c=" + fmt_g(ex.t_c) + " support_max=" + fmt_g(rep.support_max_abs) +
                           " off_support_min=" + fmt_g(rep.off_support_min) +
                           " min_density=" + fmt_g(rep.min_density)});
    }
    if (all || suite == "mass") {
        const double m = ex.measure.mass();
        const double ms = sphere_as_cap(f).mass();
        const bool ok = std::fabs(m - 1.0) <= 1e-8 && std::fabs(ms - 1.0) <= 1e-8;
        out.push_back({"mass", ok, "extremal=" + fmt_g(m) + " signed_sphere=" + fmt_g(ms)});
    }
    if (all || suite == "max-principle") {
        if (f.p.is_log() || f.p.s < f.p.d - 2 || f.p.s >= f.p.d)
            throw DomainError("max-principle needs d-2 <= s < d");
        double all_max = -1e300, sup_max = -1e300;
        const int m = 2000;
        for (int k = 0; k < m; ++k) {
            const double x = -1.0 + 2.0 * k / (m - 1);
            const double U = ex.measure.weighted_potential(x) - f.value(x);
            all_max = std::max(all_max, U);
            if (ex.measure.in_support(x)) sup_max = std::max(sup_max, U);
        }
        const bool ok = std::fabs(all_max - sup_max) <= 1e-5;
        out.push_back({"max-principle", ok, "sphere_max=" + fmt_g(all_max) + " support_max=" + fmt_g(sup_max)});
    }
    return out;
}

CommandResult cmd_verify(Params& P) {
    const std::string suite = P.str("suite", "all");
    const auto p = P.kernel();
    const auto f = field_of(P, p, -5.0, "south");
    const int grid = P.integer("grid", 200);
    const std::string fmt = P.format("text", {"text", "json"});
    if (grid < 3) throw DomainError("--grid must be >= 3");
    const auto checks = run_suite(suite, f, grid);
    CommandResult res;
    bool ok = true;
    Json arr = Json::array();
    std::string text = csv_header("verify", P.resolved());
    for (const auto& c : checks) {
        ok = ok && c.pass;
        text += std::string(c.pass ? "PASS " : "FAIL ") + c.name + " " + c.detail + "\n";
        arr.push_back(Json{{"check", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    }
    res.output = fmt == "json" ? dump(envelope("verify", P.resolved(), arr)) : text;
    res.status = ok ? kOk : kChecksFailed;
    return res;
}

std::string figure_data(Params& P) {
    const std::string kind = P.str("kind", "");
    P.format("csv", {"csv"});
    if (kind == "density-curves") {
        const auto p = P.kernel();
        const double R = P.num("R", 1.0 + (1.0 + std::sqrt(5.0)) / 2.0);
        const double q = P.num("q", 1.0);
        const std::string mode = P.str("mode", "charge");
        const int grid = P.integer("grid", 101);
        if (grid < 2) throw DomainError("--grid must be >= 2");
        AxialPointField a = AxialPointField::make(p, q, R, Pole::north);
        AxialPointField b;
        std::string extra;
        if (mode == "charge") {
            const double qm = balance_charge(p, R, q);
            b = AxialPointField::make(p, qm, R, Pole::south);
            extra = " q_minus=" + io::csv_number(qm);
        } else if (mode == "distance") {
            const double Rm = balance_distance(p, R);
            b = AxialPointField::make(p, -q, Rm, Pole::south);
            extra = " R_minus=" + io::csv_number(Rm);
        } else {
            throw DomainError("--mode must be charge or distance");
        }
        const auto ea = signed_eq_sphere(a);
        const auto eb = signed_eq_sphere(b);
        std::string csv = "u,eta_a,eta_b\n";
        for (int k = 0; k < grid; ++k) {
            const double u = -1.0 + 2.0 * k / (grid - 1);
            csv += io::csv_row({u, ea.density(u), eb.density(u)}) + "\n";
        }
        std::string head = csv_header("figure-data", P.resolved());
        head.insert(head.size() - 1, extra);
        return head + csv;
    }
    if (kind == "phi-curve") {
        const auto p = P.kernel();
        const auto f = field_of(P, p, 0.0, "south");
        const int grid = P.integer("grid", 41);
        if (grid < 2) throw DomainError("--grid must be >= 2");
        std::string csv = "t,phi\n";
        for (int k = 0; k < grid; ++k) {
            const double t = -0.99 + 1.99 * k / (grid - 1);
            const double phi = cap_for(f, t).phi;
            csv += io::csv_row({t, phi}) + "\n";
        }
        return csv_header("figure-data", P.resolved()) + csv;
    }
    if (kind == "four-point-energies") {
        RieszParameter p;
        double q;
        bool with_free;
        const auto rows = four_scan(P, p, q, with_free);
        std::string csv = "R,dE_A,dE_B,dE_C,winner\n";
        for (const auto& [R, rep] : rows) {
            double emin = std::min({rep.A.energy, rep.B.energy, rep.C.energy});
            if (rep.has_free) emin = std::min(emin, rep.free_energy);
            csv += io::csv_row({R, rep.A.energy - emin, rep.B.energy - emin, rep.C.energy - emin}) + "," +
                   letter(rep.winner) + "\n";
        }
        return csv_header("figure-data", P.resolved()) + csv;
    }
    throw DomainError("--kind must be density-curves, phi-curve or four-point-energies");
}

template <class F>
CommandResult guarded(F&& body) {
    CommandResult res;
    try {
        body(res);
    } catch (const DomainError& e) {
        res.status = kInvalid;
        res.error = std::string("invalid input: ") + e.what();
    } catch (const NoSolutionError& e) {
        res.status = kNumeric;
        res.error = std::string("no solution: ") + e.what();
    } catch (const NumericError& e) {
        res.status = kNumeric;
        res.error = std::string("numeric failure: ") + e.what();
    } catch (const std::exception& e) {
        res.status = kNumeric;
        res.error = std::string("failure: ") + e.what();
    }
    if (res.status == kInvalid || res.status == kNumeric) res.output.clear();
    return res;
}

}  // namespace

const std::vector<std::string>& subcommands() {
    static const std::vector<std::string> s = {"sphere-energy", "signed-sphere", "signed-cap", "phi-scan",
                                               "critical-t",    "fekete",        "four-point-scan",
                                               "separation",    "verify",        "figure-data"};
    return s;
}

const std::vector<std::string>& options_for(const std::string& subcommand) {
    const auto it = table().find(subcommand);
    if (it == table().end()) throw DomainError("unknown subcommand " + subcommand);
    return it->second;
}

CommandResult run(const CommandRequest& req) {
    return guarded([&](CommandResult& res) {
        Params P(req.subcommand, req.params);
        const std::string& c = req.subcommand;
        if (c == "verify") {
            res = cmd_verify(P);
            return;
        }
        if (c == "sphere-energy") res.output = cmd_sphere_energy(P);
        else if (c == "signed-sphere") res.output = cmd_signed_sphere(P);
        else if (c == "signed-cap") res.output = cmd_signed_cap(P);
        else if (c == "phi-scan") res.output = cmd_phi_scan(P);
        else if (c == "critical-t") res.output = cmd_critical_t(P);
        else if (c == "fekete") res.output = cmd_fekete(P);
        else if (c == "four-point-scan") res.output = cmd_four_point_scan(P);
        else if (c == "separation") res.output = cmd_separation(P);
        else if (c == "figure-data") res.output = figure_data(P);
        else throw DomainError("unknown subcommand " + c);
    });
}

std::string emit_figure_data(const std::string& kind, const std::map<std::string, std::string>& params) {
    CommandRequest req{"figure-data", params};
    req.params["kind"] = kind;
    const auto r = run(req);
    if (r.status == kInvalid) throw DomainError(r.error);
    if (r.status != kOk) throw NumericError(r.error);
    return r.output;
}

int main_entry(int argc, char** argv) {
    CLI::App app{"Riesz external-field equilibria and Fekete points on spheres"};
    app.require_subcommand(1);
    std::map<std::string, std::map<std::string, std::string>> values;
    for (const auto& name : subcommands()) {
        auto* sub = app.add_subcommand(name);
        for (const auto& opt : options_for(name)) {
            sub->add_option_function<std::string>(
                "--" + opt, [&values, name, opt](const std::string& v) { values[name][opt] = v; },
                opt == "s" ? "Riesz exponent or the token log" : "");
        }
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalid;
    }
    CommandRequest req;
    for (auto* sub : app.get_subcommands()) req.subcommand = sub->get_name();
    req.params = values[req.subcommand];
    const auto res = run(req);
    if (res.status == kInvalid || res.status == kNumeric) {
        std::cerr << req.subcommand << ": " << res.error << "\n";
        return res.status;
    }
    auto out = req.params.find("output");
    if (out != req.params.end()) {
        std::ofstream f(out->second, std::ios::binary);
        if (!f) {
            std::cerr << req.subcommand << ": cannot write " << out->second << "\n";
            return kInvalid;
        }
        f << res.output;
    } else {
        std::cout << res.output;
    }
    return res.status;
}

}  // namespace riesz::cli
