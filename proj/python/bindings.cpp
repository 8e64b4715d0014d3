#include "symldf/analysis.hpp"
#include "symldf/commands.hpp"
#include "symldf/errors.hpp"
#include "symldf/legendre.hpp"
#include "symldf/spectral.hpp"
#include "symldf/trajectories.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace symldf;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Activity-current large deviations of a three-qubit exchange-symmetric open system";

    py::register_exception<Error>(m, "SymldfError", PyExc_RuntimeError);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init([](double b_z, double gamma_bath, double n_bath, double gamma_dephase) {
                 ModelParams p{b_z, gamma_bath, n_bath, gamma_dephase};
                 p.validate();
                 return p;
             }),
             py::arg("b_z") = 0.5, py::arg("gamma_bath") = 0.1, py::arg("n_bath") = 0.1,
             py::arg("gamma_dephase") = 0.0)
        .def_readwrite("b_z", &ModelParams::b_z)
        .def_readwrite("gamma_bath", &ModelParams::gamma_bath)
        .def_readwrite("n_bath", &ModelParams::n_bath)
        .def_readwrite("gamma_dephase", &ModelParams::gamma_dephase)
        .def_property_readonly("kappa", &ModelParams::kappa)
        .def_property_readonly("symmetric", &ModelParams::symmetric)
        .def("__repr__", [](const ModelParams& p) {
            std::ostringstream os;
            os << "ModelParams(b_z=" << p.b_z << ", gamma_bath=" << p.gamma_bath
               << ", n_bath=" << p.n_bath << ", gamma_dephase=" << p.gamma_dephase << ")";
            return os.str();
        });

    py::enum_<Sector>(m, "Sector").value("S", Sector::S).value("A", Sector::A).value("full", Sector::full);

    m.def("hamiltonian", &build_hamiltonian, py::arg("params"));
    m.def("liouvillian", [](const ModelParams& p) { return Matrix(build_liouvillian(p).matrix); },
          py::arg("params"));
    m.def("steady_state", &steady_state, py::arg("params"), py::arg("sector"));

    m.def("mu",
          [](const ModelParams& p, double lambda, double eps, const std::string& overlap) {
              const SectorOverlap o = overlap == "both" ? overlap_both()
                                      : overlap == "S"  ? overlap_only(Sector::S)
                                      : overlap == "A"  ? overlap_only(Sector::A)
                                                        : throw InvalidParameter("overlap must be both, S or A");
              return TiltedGenerator(p).mu({lambda, eps}, o).value;
          },
          py::arg("params"), py::arg("lam"), py::arg("eps"), py::arg("overlap") = "both");

    m.def("sector_averages", [](const ModelParams& p) {
        const SectorAverages a = sector_averages(p);
        return py::dict(py::arg("q_S") = a.q_S, py::arg("q_A") = a.q_A, py::arg("a_S") = a.a_S,
                        py::arg("a_A") = a.a_A);
    });

    m.def("theta", [](const ModelParams& p, const std::vector<double>& grid) {
        return scan_curve(p, Axis::lambda, grid, overlap_both()).values;
    });
    m.def("zeta", [](const ModelParams& p, const std::vector<double>& grid) {
        return scan_curve(p, Axis::epsilon, grid, overlap_both()).values;
    });
    m.def("kinks", [](const std::vector<double>& grid, const std::vector<double>& values) {
        std::vector<std::pair<double, double>> out;
        for (const Kink& k : detect_kinks(grid, values)) out.emplace_back(k.position, k.jump);
        return out;
    });

    m.def("mean_xi",
          [](const ModelParams& p, double T, std::size_t n_traj, std::uint64_t seed) {
              const EnsembleStats st = ensemble_run(p, InitialState::pure(mixed_sector_state()), T, n_traj, seed);
              return py::make_tuple(st.times, st.mean_xi, st.stderr_xi);
          },
          py::arg("params"), py::arg("T"), py::arg("n_traj"), py::arg("seed") = 20240501);

    m.def("run_command",
          [](const std::string& command, const std::string& out_dir, std::uint64_t seed) {
              RunConfig c;
              c.output_dir = out_dir;
              c.seed = seed;
              std::ostringstream log;
              const CommandResult r = run_command(command, c, log);
              std::vector<std::string> files;
              for (const auto& f : r.files) files.push_back(f.string());
              return py::make_tuple(r.exit_code, files, log.str());
          },
          py::arg("command"), py::arg("out_dir"), py::arg("seed") = 20240501);
}
