// Python face of the library: config/geometry, grid construction, steering
// and correlation, the Fresnel transform pair, beam maps, link metrics, and
// single-shot detection. Vector arguments accept any Python sequence
// (numpy arrays included) and come back as lists.
#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fsm4d/channel.hpp"
#include "fsm4d/config.hpp"
#include "fsm4d/detector.hpp"
#include "fsm4d/dfnt.hpp"
#include "fsm4d/geometry.hpp"
#include "fsm4d/manifold.hpp"
#include "fsm4d/metrics.hpp"

namespace py = pybind11;
using namespace fsm4d;

PYBIND11_MODULE(fsm4d, m) {
  m.doc() = "near-field space-time modulation toolkit";

  py::enum_<GridMode>(m, "GridMode")
      .value("Uniform", GridMode::Uniform)
      .value("Orthogonal", GridMode::Orthogonal);

  py::enum_<Scheme>(m, "Scheme")
      .value("Fsm", Scheme::Fsm)
      .value("Btsm", Scheme::Btsm)
      .value("Ttd", Scheme::Ttd)
      .value("OtfsStyle", Scheme::OtfsStyle)
      .value("Ldma", Scheme::Ldma);

  py::enum_<SolverKind>(m, "SolverKind")
      .value("Svd", SolverKind::Svd)
      .value("MmseZf", SolverKind::MmseZf)
      .value("Mf", SolverKind::Mf)
      .value("Omp", SolverKind::Omp)
      .value("Somp", SolverKind::Somp)
      .value("Dfnt", SolverKind::Dfnt);

  py::class_<SystemConfig>(m, "SystemConfig")
      .def(py::init<>())
      .def_readwrite("f_c", &SystemConfig::f_c)
      .def_readwrite("N", &SystemConfig::N)
      .def_readwrite("d_over_lambda", &SystemConfig::d_over_lambda)
      .def_readwrite("z0", &SystemConfig::z0)
      .def_readwrite("v_max", &SystemConfig::v_max)
      .def_readwrite("T_int", &SystemConfig::T_int)
      .def_readwrite("snr_db", &SystemConfig::snr_db)
      .def_readwrite("omega", &SystemConfig::omega)
      .def_readwrite("sigma_phi", &SystemConfig::sigma_phi)
      .def_readwrite("alpha_atm", &SystemConfig::alpha_atm)
      .def_readwrite("c_light", &SystemConfig::c_light)
      .def_readwrite("n_mc", &SystemConfig::n_mc)
      .def_readwrite("n_t", &SystemConfig::n_t)
      .def_readwrite("seed", &SystemConfig::seed)
      .def_readwrite("A", &SystemConfig::A)
      .def_readwrite("B", &SystemConfig::B)
      .def_readwrite("C", &SystemConfig::C)
      .def_readwrite("qam_order", &SystemConfig::qam_order)
      .def_readwrite("fov_deg", &SystemConfig::fov_deg)
      .def_readwrite("mode", &SystemConfig::mode)
      .def_readwrite("B_cb", &SystemConfig::B_cb)
      .def_readwrite("N_D", &SystemConfig::N_D);

  m.def("validate", &validate);
  m.def("full_scale", &full_scale);

  py::class_<DerivedGeometry>(m, "DerivedGeometry")
      .def_readonly("wavelength", &DerivedGeometry::lambda)
      .def_readonly("d", &DerivedGeometry::d)
      .def_readonly("D", &DerivedGeometry::D)
      .def_readonly("k", &DerivedGeometry::k)
      .def_readonly("F", &DerivedGeometry::F)
      .def_readonly("dx_rayleigh", &DerivedGeometry::dx_rayleigh)
      .def_readonly("dz_fresnel", &DerivedGeometry::dz_fresnel)
      .def_readonly("T_c", &DerivedGeometry::T_c)
      .def_readonly("w_spot", &DerivedGeometry::w_spot)
      .def_readonly("xi", &DerivedGeometry::xi)
      .def_readonly("N", &DerivedGeometry::N)
      .def_readonly("z0", &DerivedGeometry::z0);

  m.def("derive_geometry", &derive_geometry);
  m.def("sinc_norm", &sinc_norm);
  m.def("inverse_sinc", &inverse_sinc);
  m.def("doppler_frequency",
        static_cast<double (*)(double, const SystemConfig&)>(&doppler_frequency));

  py::class_<Symbol4D>(m, "Symbol4D")
      .def_readonly("theta", &Symbol4D::theta)
      .def_readonly("z", &Symbol4D::z)
      .def_readonly("v", &Symbol4D::v)
      .def_readonly("qam_index", &Symbol4D::qam_index)
      .def_readonly("qam_value", &Symbol4D::qam_value);

  py::class_<ManifoldGrid>(m, "ManifoldGrid")
      .def_readonly("thetas", &ManifoldGrid::thetas)
      .def_readonly("depths", &ManifoldGrid::depths)
      .def_readonly("velocities", &ManifoldGrid::velocities)
      .def_readonly("qam", &ManifoldGrid::qam)
      .def_readonly("bits_per_symbol", &ManifoldGrid::bits_per_symbol)
      .def("symbol", &ManifoldGrid::symbol);

  m.def("build_grid", &build_grid, py::arg("geom"), py::arg("A"), py::arg("B"),
        py::arg("C"), py::arg("qam_order"),
        py::arg("mode") = GridMode::Orthogonal, py::arg("fov_deg") = 30.0);
  m.def("encode_bits", &encode_bits);
  m.def("channel_vector", &channel_vector);
  m.def("manifold_correlation", &manifold_correlation);
  m.def("velocity_null_spacing", &velocity_null_spacing);
  m.def("depth_null_spacing", &depth_null_spacing);

  m.def("dfnt_apply", &dfnt_apply);
  m.def("dfnt_inverse", &dfnt_inverse);
  m.def("chirp_kernel", &chirp_kernel);
  m.def("precode", &precode);

  py::class_<BeamMap>(m, "BeamMap")
      .def_readonly("xs", &BeamMap::xs)
      .def_readonly("zs", &BeamMap::zs)
      .def_readonly("intensity", &BeamMap::intensity)
      .def_readonly("nx", &BeamMap::nx)
      .def_readonly("nz", &BeamMap::nz)
      .def_readonly("peak_raw", &BeamMap::peak_raw);

  m.def("beam_intensity_map", &beam_intensity_map);

  py::class_<FlopEstimate>(m, "FlopEstimate")
      .def_readonly("flops", &FlopEstimate::flops)
      .def_readonly("seconds", &FlopEstimate::seconds)
      .def_readonly("ratio_vs_Tc", &FlopEstimate::ratio_vs_Tc);

  m.def("flop_estimate", &flop_estimate, py::arg("kind"), py::arg("n"),
        py::arg("T_c"), py::arg("flops_rate") = 1e13, py::arg("sparsity") = 10);

  py::class_<DopplerProfile>(m, "DopplerProfile")
      .def_readonly("xi", &DopplerProfile::xi)
      .def_readonly("f_true", &DopplerProfile::f_true)
      .def_readonly("f_dev", &DopplerProfile::f_dev)
      .def_readonly("f_plane", &DopplerProfile::f_plane);

  m.def("nf_doppler_profile", &nf_doppler_profile);

  m.def("spectral_efficiency", &spectral_efficiency);
  m.def("btsm_codebook_size", &btsm_codebook_size);
  m.def("multiplexing_capacity", &multiplexing_capacity);
  m.def("sum_rate", &sum_rate);
  m.def("peak_sum_rate", &peak_sum_rate);

  py::class_<DetectionResult>(m, "DetectionResult")
      .def_readonly("s_hat", &DetectionResult::s_hat)
      .def_readonly("metric", &DetectionResult::metric)
      .def_readonly("qam_hat", &DetectionResult::qam_hat)
      .def_readonly("bits_hat", &DetectionResult::bits_hat);

  m.def("matched_filter_detect", &matched_filter_detect);
}
