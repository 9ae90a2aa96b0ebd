#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "delayctl/control.hpp"
#include "delayctl/oracle.hpp"
#include "delayctl/simulate.hpp"
#include "delayctl/spectral.hpp"
#include "delayctl/state.hpp"
#include "delayctl/summation.hpp"

namespace py = pybind11;
using namespace delayctl;

PYBIND11_MODULE(_delayctl, m) {
    m.doc() = "Minimal-L2-norm null controls for a linear delay equation";

    py::class_<DelayKernel>(m, "DelayKernel")
        .def_static("zero", &DelayKernel::zero)
        .def_static("sampled", &DelayKernel::sampled, py::arg("samples"))
        .def("is_zero", &DelayKernel::is_zero)
        .def("is_real", &DelayKernel::is_real)
        .def("exp_moment", &DelayKernel::exp_moment, py::arg("z"));

    py::class_<EigenRecord>(m, "EigenRecord")
        .def_readonly("lambda_", &EigenRecord::lambda)
        .def_readonly("d_prime", &EigenRecord::d_prime)
        .def_readonly("xi_bar", &EigenRecord::xi_bar)
        .def_readonly("branch", &EigenRecord::branch);

    py::class_<SpectrumSet>(m, "SpectrumSet")
        .def_readonly("records", &SpectrumSet::records)
        .def("by_branch", &SpectrumSet::by_branch, py::arg("branch"),
             py::return_value_policy::copy);

    py::class_<MState>(m, "MState")
        .def_static("zero", &MState::zero, py::arg("panels"))
        .def_static("ones", &MState::ones, py::arg("panels"))
        .def_static("eigenvector", &MState::eigenvector, py::arg("lambda_"), py::arg("panels"))
        .def_readwrite("head", &MState::head)
        .def_readwrite("tail", &MState::tail)
        .def("panels", &MState::panels);

    py::class_<SummationSchedule>(m, "SummationSchedule")
        .def(py::init<>())
        .def_readwrite("l_coeff", &SummationSchedule::l_coeff)
        .def_readwrite("l_power", &SummationSchedule::l_power)
        .def_readwrite("R_coeff", &SummationSchedule::R_coeff)
        .def_readwrite("R_power", &SummationSchedule::R_power)
        .def("l", &SummationSchedule::l, py::arg("n"))
        .def("R", &SummationSchedule::R, py::arg("n"))
        .def("validate", &SummationSchedule::validate, py::arg("n_max"));

    py::class_<Horizon>(m, "Horizon")
        .def_static("of", &Horizon::of, py::arg("T"))
        .def_readonly("T", &Horizon::T)
        .def_readonly("delta", &Horizon::delta);

    py::class_<ControlSignal>(m, "ControlSignal")
        .def_readonly("samples", &ControlSignal::samples)
        .def_readonly("T", &ControlSignal::T);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("samples", &Trajectory::samples)
        .def("value_at", &Trajectory::value_at, py::arg("t"))
        .def("grid_step", &Trajectory::grid_step);

    m.def("find_roots",
          [](const DelayKernel& kernel, int lo, int hi) { return find_roots(kernel, lo, hi); },
          py::arg("kernel"), py::arg("branch_lo"), py::arg("branch_hi"));
    m.def("eval_charfn", &eval_charfn, py::arg("z"), py::arg("kernel"));
    m.def("m_inner", &m_inner, py::arg("a"), py::arg("b"));
    m.def("m_norm", &m_norm, py::arg("a"));
    m.def("expansion_coefficient", &expansion_coefficient, py::arg("x"), py::arg("record"),
          py::arg("kernel"));
    m.def("weight_for_eigenvalue", &weight_for_eigenvalue, py::arg("n"), py::arg("record"),
          py::arg("schedule"));
    m.def("partial_sum", &partial_sum, py::arg("x"), py::arg("n"), py::arg("spectrum"),
          py::arg("schedule"));
    m.def("u_for_eigenvector", &u_for_eigenvector, py::arg("record"), py::arg("horizon"),
          py::arg("panels"));
    m.def("synthesize_control", &synthesize_control, py::arg("x0"), py::arg("n"),
          py::arg("spectrum"), py::arg("schedule"), py::arg("horizon"), py::arg("panels"));
    m.def("l2_norm", &l2_norm, py::arg("u"));
    m.def("simulate",
          [](const MState& x0, const ControlSignal* u, const DelayKernel& kernel, double t_end,
             std::size_t steps_per_unit) {
              return simulate(x0, u, kernel, t_end, {steps_per_unit});
          },
          py::arg("x0"), py::arg("u"), py::arg("kernel"), py::arg("t_end"),
          py::arg("steps_per_unit") = 2048);
    m.def("terminal_segment_norm", &terminal_segment_norm, py::arg("trajectory"), py::arg("T"));
    m.def("least_norm_control",
          [](const MState& x0, const DelayKernel& kernel, double T, std::size_t N) {
              return least_norm_control(x0, kernel, T, N).u;
          },
          py::arg("x0"), py::arg("kernel"), py::arg("T"), py::arg("N"));
}
