#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "d2dcache/analytic.hpp"
#include "d2dcache/config.hpp"
#include "d2dcache/montecarlo.hpp"
#include "d2dcache/optimize.hpp"

namespace py = pybind11;
using namespace d2dcache;

PYBIND11_MODULE(d2dcache, m) {
  m.doc() = "Cache-enabled multicast D2D model: Zipf popularity, coverage, hit probability, energy ratio";
  m.attr("__version__") = std::string(kVersion);

  py::enum_<SeriesForm>(m, "SeriesForm")
      .value("Closed", SeriesForm::Closed)
      .value("Truncated", SeriesForm::Truncated);
  py::enum_<RegionMode>(m, "RegionMode").value("Torus", RegionMode::Torus).value("Disk", RegionMode::Disk);
  py::enum_<Direction>(m, "Direction").value("Minimize", Direction::Minimize).value("Maximize", Direction::Maximize);

  py::class_<ZipfCatalog>(m, "ZipfCatalog")
      .def(py::init<std::size_t, double>(), py::arg("files"), py::arg("gamma"))
      .def_property_readonly("size", &ZipfCatalog::size)
      .def_property_readonly("gamma", &ZipfCatalog::exponent)
      .def_property_readonly("normalization", &ZipfCatalog::normalization)
      .def("pmf", &ZipfCatalog::pmf, py::arg("rank"))
      .def("top_mass", &ZipfCatalog::top_mass, py::arg("count"));

  py::class_<NetworkParams>(m, "NetworkParams")
      .def(py::init<>())
      .def(py::init([](double cell_radius, double cluster_radius, std::size_t heads, std::size_t members,
                       std::size_t cache_capacity, double energy_ratio) {
             NetworkParams p{cell_radius, cluster_radius, heads, members, cache_capacity, energy_ratio};
             p.validate();
             return p;
           }),
           py::arg("cell_radius") = 200.0, py::arg("cluster_radius") = 50.0, py::arg("heads") = 100,
           py::arg("members") = 250, py::arg("cache_capacity") = 10, py::arg("energy_ratio") = 0.1)
      .def_readwrite("cell_radius", &NetworkParams::cell_radius)
      .def_readwrite("cluster_radius", &NetworkParams::cluster_radius)
      .def_readwrite("heads", &NetworkParams::heads)
      .def_readwrite("members", &NetworkParams::members)
      .def_readwrite("cache_capacity", &NetworkParams::cache_capacity)
      .def_readwrite("energy_ratio", &NetworkParams::energy_ratio)
      .def_property_readonly("head_intensity", &head_intensity)
      .def_property_readonly("member_intensity", &member_intensity);

  py::class_<CacheStrategy>(m, "CacheStrategy")
      .def_static("eprc", &CacheStrategy::eprc)
      .def_static("mpc", &CacheStrategy::mpc)
      .def_static("top", &CacheStrategy::top, py::arg("pool"))
      .def_static("parse", &CacheStrategy::parse)
      .def("pool", &CacheStrategy::pool, py::arg("capacity"), py::arg("files"))
      .def_property_readonly("name", &CacheStrategy::name)
      .def("__repr__", [](const CacheStrategy& s) { return "CacheStrategy(" + s.name() + ")"; });

  py::class_<AnalyticReport>(m, "AnalyticReport")
      .def_readonly("pool", &AnalyticReport::pool)
      .def_readonly("hit_prob", &AnalyticReport::hit_prob)
      .def_readonly("d2d_service_prob", &AnalyticReport::d2d_service_prob)
      .def_readonly("active_heads", &AnalyticReport::active_heads)
      .def_readonly("ec_ratio", &AnalyticReport::ec_ratio);

  m.def("poisson_pmf", &poisson_pmf, py::arg("k"), py::arg("lam"));
  m.def("coverage_prob", &coverage_prob, py::arg("p"), py::arg("lam"), py::arg("truncate_at") = py::none());
  m.def("hit_prob", &hit_prob, py::arg("params"), py::arg("catalog"), py::arg("pool"),
        py::arg("form") = SeriesForm::Closed);
  m.def("d2d_service_prob", &d2d_service_prob, py::arg("catalog"), py::arg("capacity"), py::arg("pool"));
  m.def("expected_active_heads", &expected_active_heads, py::arg("params"), py::arg("catalog"), py::arg("pool"),
        py::arg("form") = SeriesForm::Closed);
  m.def(
      "ec_ratio",
      [](const NetworkParams& p, const ZipfCatalog& c, std::size_t pool, SeriesForm form) {
        return ec_ratio(p, c, pool, form);
      },
      py::arg("params"), py::arg("catalog"), py::arg("pool"), py::arg("form") = SeriesForm::Closed);
  m.def("evaluate", &evaluate, py::arg("params"), py::arg("catalog"), py::arg("pool"),
        py::arg("form") = SeriesForm::Closed);

  py::class_<OptimizationResult>(m, "OptimizationResult")
      .def_readonly("best_pool", &OptimizationResult::best_pool)
      .def_readonly("objective_value", &OptimizationResult::objective_value)
      .def_readonly("trace", &OptimizationResult::trace);
  m.def(
      "optimize_lhp", [](const NetworkParams& p, const ZipfCatalog& c) { return optimize_lhp(p, c); },
      py::arg("params"), py::arg("catalog"));
  m.def(
      "optimize_lec",
      [](const NetworkParams& p, const ZipfCatalog& c, Direction d) { return optimize_lec(p, c, d); },
      py::arg("params"), py::arg("catalog"), py::arg("direction") = Direction::Minimize);

  py::class_<Estimate>(m, "Estimate")
      .def_readonly("mean", &Estimate::mean)
      .def_readonly("half_width", &Estimate::half_width)
      .def_readonly("n", &Estimate::n)
      .def_readonly("degenerate", &Estimate::degenerate);
  py::class_<SimResult>(m, "SimResult")
      .def_readonly("hit_rate", &SimResult::hit_rate)
      .def_readonly("active_heads", &SimResult::active_heads)
      .def_readonly("ec_ratio", &SimResult::ec_ratio)
      .def_readonly("samples", &SimResult::samples);
  m.def(
      "simulate",
      [](const NetworkParams& p, const ZipfCatalog& c, const CacheStrategy& strategy, std::size_t trials,
         std::uint64_t seed, RegionMode region, std::size_t requests_per_trial, std::size_t workers) {
        SimConfig cfg;
        cfg.strategy = strategy;
        cfg.trials = trials;
        cfg.seed = seed;
        cfg.region = region;
        cfg.requests_per_trial = requests_per_trial;
        cfg.workers = workers;
        py::gil_scoped_release release;
        return simulate(p, c, cfg);
      },
      py::arg("params"), py::arg("catalog"), py::arg("strategy"), py::arg("trials") = 400, py::arg("seed") = 1,
      py::arg("region") = RegionMode::Torus, py::arg("requests_per_trial") = 1, py::arg("workers") = 1);
}
