#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "riesz/cli.hpp"
#include "riesz/equilibrium.hpp"
#include "riesz/errors.hpp"
#include "riesz/fekete.hpp"
#include "riesz/specfun.hpp"
#include "riesz/sphere.hpp"

namespace py = pybind11;
using namespace riesz;

namespace {

RieszParameter kernel_of(int d, const py::object& s) {
    if (py::isinstance<py::str>(s)) {
        if (s.cast<std::string>() != "log") throw DomainError("s must be a number or 'log'");
        return RieszParameter::logarithmic(d);
    }
    return RieszParameter::riesz(d, s.cast<double>());
}

py::dict fekete_dict(const FeketeResult& r) {
    py::dict out;
    out["points"] = r.config.points();
    out["energy"] = r.energy;
    out["delta"] = r.config.delta();
    out["grad_norm"] = r.grad_norm;
    out["converged"] = r.converged;
    out["iterations"] = r.iterations;
    out["starts"] = r.starts;
    out["best_start"] = r.best_start;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Riesz external-field equilibria and Fekete points on spheres.";

    static py::exception<DomainError> domain_exc(m, "DomainError", PyExc_ValueError);
    static py::exception<NumericError> numeric_exc(m, "NumericError", PyExc_ArithmeticError);
    static py::exception<NoSolutionError> nosol_exc(m, "NoSolutionError", PyExc_LookupError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const DomainError& e) {
            PyErr_SetString(domain_exc.ptr(), e.what());
        } catch (const NumericError& e) {
            PyErr_SetString(numeric_exc.ptr(), e.what());
        } catch (const NoSolutionError& e) {
            PyErr_SetString(nosol_exc.ptr(), e.what());
        }
    });

    // special functions
    m.def("gamma", &specfun::gamma_fn, py::arg("x"));
    m.def("pochhammer", &specfun::pochhammer, py::arg("a"), py::arg("n"));
    m.def("hyp2f1", &specfun::hyp2f1, py::arg("a"), py::arg("b"), py::arg("c"), py::arg("z"));
    m.def("hyp2f1_regularized", &specfun::hyp2f1_regularized, py::arg("a"), py::arg("b"), py::arg("c"),
          py::arg("z"));
    m.def("inc_beta_regularized", &specfun::inc_beta_regularized, py::arg("x"), py::arg("a"), py::arg("b"));

    py::class_<RieszParameter>(m, "RieszParameter")
        .def(py::init([](int d, const py::object& s) { return kernel_of(d, s); }), py::arg("d"),
             py::arg("s"))
        .def_readonly("d", &RieszParameter::d)
        .def_readonly("s", &RieszParameter::s)
        .def_property_readonly("is_log", &RieszParameter::is_log)
        .def("__repr__", [](const RieszParameter& p) {
            return "RieszParameter(d=" + std::to_string(p.d) + ", s=" + p.s_label() + ")";
        });

    // sphere
    m.def("gamma_d", &sphere::gamma_d, py::arg("d"));
    m.def("sphere_energy", [](int d, const py::object& s) {
        const auto p = kernel_of(d, s);
        return p.is_log() ? sphere::log_energy(d) : sphere::sphere_energy(p);
    }, py::arg("d"), py::arg("s"));
    m.def("uniform_potential_exterior", [](int d, const py::object& s, double R) {
        return sphere::uniform_potential_exterior(kernel_of(d, s), R);
    }, py::arg("d"), py::arg("s"), py::arg("R"));
    m.def("cap_area", &sphere::cap_area, py::arg("d"), py::arg("r"));
    m.def("deleted_cap_integral", [](int d, double s, double r) {
        return sphere::deleted_cap_integral(RieszParameter::riesz(d, s), r);
    }, py::arg("d"), py::arg("s"), py::arg("r"));

    // equilibrium
    py::enum_<Pole>(m, "Pole").value("north", Pole::north).value("south", Pole::south);

    py::class_<AxialPointField>(m, "AxialPointField")
        .def(py::init([](int d, const py::object& s, double q, double R, const std::string& pole) {
                 return AxialPointField::make(kernel_of(d, s), q, R, pole_from_string(pole));
             }),
             py::arg("d"), py::arg("s"), py::arg("q"), py::arg("R"), py::arg("pole") = "south")
        .def_readonly("q", &AxialPointField::q)
        .def_readonly("R", &AxialPointField::R)
        .def("value", &AxialPointField::value, py::arg("x"));

    py::class_<CapEquilibrium>(m, "CapEquilibrium")
        .def_readonly("t", &CapEquilibrium::t)
        .def_readonly("phi", &CapEquilibrium::phi)
        .def_readonly("is_positive", &CapEquilibrium::is_positive)
        .def_readonly("boundary_charge", &CapEquilibrium::boundary_charge)
        .def("density", &CapEquilibrium::density_at, py::arg("x"))
        .def("mass", &CapEquilibrium::mass)
        .def("weighted_potential", &CapEquilibrium::weighted_potential, py::arg("x"))
        .def("weighted_potential_quadrature",
             [](const CapEquilibrium& e, double x) { return e.weighted_potential_quadrature(x); },
             py::arg("x"))
        .def("samples", &CapEquilibrium::density_samples, py::arg("n"));

    m.def("signed_eq_sphere_density", [](const AxialPointField& f, double x) {
        return signed_eq_sphere(f).density(x);
    }, py::arg("field"), py::arg("x"));
    m.def("support_is_full_sphere", &support_is_full_sphere, py::arg("field"));
    m.def("balance_charge", [](int d, double s, double R, double q_plus) {
        return balance_charge(RieszParameter::riesz(d, s), R, q_plus);
    }, py::arg("d"), py::arg("s"), py::arg("R"), py::arg("q_plus"));
    m.def("balance_distance", [](int d, double s, double R_plus) {
        return balance_distance(RieszParameter::riesz(d, s), R_plus);
    }, py::arg("d"), py::arg("s"), py::arg("R_plus"));
    m.def("phi_of_t", &phi_of_t, py::arg("field"), py::arg("t"));
    m.def("cap_signed_equilibrium", &cap_signed_equilibrium, py::arg("field"), py::arg("t"));
    m.def("limiting_cap_equilibrium", &limiting_cap_equilibrium, py::arg("field"), py::arg("t"));
    m.def("critical_t", [](const AxialPointField& f) {
        const auto r = critical_t(f);
        py::dict out;
        out["t_c"] = r.t_c;
        out["F"] = r.F;
        out["root_residual"] = r.root_residual;
        out["sign_changes"] = r.sign_changes;
        out["diagnostic"] = r.diagnostic;
        out["measure"] = r.measure;
        return out;
    }, py::arg("field"));
    m.def("verify_variational", [](const AxialPointField& f, int grid) {
        const auto r = critical_t(f);
        const auto rep = verify_variational(r, altitude_grid(grid));
        py::dict out;
        out["pass"] = rep.pass;
        out["support_max_abs"] = rep.support_max_abs;
        out["off_support_min"] = rep.off_support_min;
        out["min_density"] = rep.min_density;
        return out;
    }, py::arg("field"), py::arg("grid") = 200);

    // fekete
    m.def("discrete_energy", [](const std::vector<std::vector<double>>& pts, const py::object& s, double q,
                                double R, const std::string& pole) {
        const int d = static_cast<int>(pts.at(0).size()) - 1;
        const auto p = kernel_of(d, s);
        const auto X = Configuration::from_points(d, pts);
        const auto Q = q == 0.0 ? ExternalFieldSpec::none() : ExternalFieldSpec::point(d, q, R, pole_from_string(pole));
        return discrete_energy(X, Q, p);
    }, py::arg("points"), py::arg("s"), py::arg("q") = 0.0, py::arg("R") = 2.0, py::arg("pole") = "north");
    m.def("minimize_fekete", [](int d, int n, const py::object& s, double q, double R, const std::string& pole,
                                int multistarts, std::uint64_t seed, int threads) {
        const auto p = kernel_of(d, s);
        OptimizerOptions o;
        o.multistarts = multistarts;
        o.seed = seed;
        o.threads = threads;
        const auto Q = q == 0.0 ? ExternalFieldSpec::none() : ExternalFieldSpec::point(d, q, R, pole_from_string(pole));
        FeketeResult r;
        {
            py::gil_scoped_release nogil;
            r = minimize_fekete(d, n, Q, p, o);
        }
        return fekete_dict(r);
    }, py::arg("d"), py::arg("n"), py::arg("s"), py::arg("q") = 0.0, py::arg("R") = 2.0,
       py::arg("pole") = "north", py::arg("multistarts") = 64, py::arg("seed") = 1, py::arg("threads") = 0);
    m.def("three_point_intercept", [](double q, const py::object& s, double R) {
        const auto r = three_point_intercept(q, kernel_of(2, s), R);
        return py::make_tuple(r.t0, r.energy, r.residual);
    }, py::arg("q"), py::arg("s"), py::arg("R"));
    m.def("four_point_family_energy", [](const std::string& kind, double t, double tau, double q, double R,
                                         const py::object& s) {
        FourPointKind k;
        if (kind == "A") k = FourPointKind::A_pyramid_13;
        else if (kind == "B") k = FourPointKind::B_pairs_22;
        else if (kind == "C") k = FourPointKind::C_square_04;
        else throw DomainError("kind must be A, B or C");
        return four_point_family_energy(k, t, tau, q, R, kernel_of(2, s));
    }, py::arg("kind"), py::arg("t"), py::arg("tau"), py::arg("q"), py::arg("R"), py::arg("s"));
    m.def("four_point_best", [](double q, double R, const py::object& s, bool with_free) {
        const auto r = four_point_best(q, R, kernel_of(2, s), with_free);
        py::dict out;
        out["winner"] = std::string(1, letter(r.winner));
        out["E_A"] = r.A.energy;
        out["E_B"] = r.B.energy;
        out["E_C"] = r.C.energy;
        out["E_free"] = r.has_free ? py::cast(r.free_energy) : py::none();
        out["free_kind"] = r.free_kind;
        out["agrees"] = r.agrees;
        return out;
    }, py::arg("q"), py::arg("R"), py::arg("s") = 1.0, py::arg("with_free") = true);
    m.def("separation_constant", [](int d, const py::object& s, double plus_mass, double minus_mass, double r) {
        const auto c = separation_constant({plus_mass, minus_mass, r}, kernel_of(d, s));
        return py::make_tuple(c.K, c.c_sigma, c.n_threshold);
    }, py::arg("d"), py::arg("s"), py::arg("plus_mass") = 0.0, py::arg("minus_mass") = 0.0, py::arg("r") = 2.0);
    m.def("kappa", &kappa, py::arg("d"));
    m.def("hyper_singular_bound", [](int n, double q, double R, int d, double s) {
        return hyper_singular_bound(n, q, R, RieszParameter::riesz(d, s));
    }, py::arg("n"), py::arg("q"), py::arg("R"), py::arg("d"), py::arg("s"));
    m.def("monotonicity_check", [](const std::map<int, double>& e) { return monotonicity_check(e); },
          py::arg("energies"));

    // same dispatcher as the command line
    m.def("run", [](const std::string& sub, const std::map<std::string, std::string>& params) {
        const auto r = cli::run({sub, params});
        return py::make_tuple(r.status, r.output, r.error);
    }, py::arg("subcommand"), py::arg("params"));
}
