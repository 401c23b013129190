#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "specsim/baselines.hpp"
#include "specsim/channel.hpp"
#include "specsim/game.hpp"
#include "specsim/harness.hpp"
#include "specsim/io.hpp"
#include "specsim/learning.hpp"
#include "specsim/rng.hpp"
#include "specsim/topology.hpp"

namespace py = pybind11;
using namespace specsim;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Distributed spectrum access for small cell networks: "
            "interference graphs, the graphical access game, stochastic learning "
            "automata and genie-aided baselines.";

  // ---- topology ----
  py::class_<Point>(m, "Point")
      .def(py::init<double, double>(), py::arg("x"), py::arg("y"))
      .def_readwrite("x", &Point::x)
      .def_readwrite("y", &Point::y);

  py::class_<Area>(m, "Area")
      .def(py::init<double, double>(), py::arg("width"), py::arg("height"))
      .def_readwrite("width", &Area::width)
      .def_readwrite("height", &Area::height);

  py::class_<Deployment>(m, "Deployment")
      .def_readonly("positions", &Deployment::positions)
      .def_readonly("area", &Deployment::area)
      .def_readonly("seed", &Deployment::seed);

  py::class_<InterferenceGraph>(m, "InterferenceGraph")
      .def_property_readonly("n_nodes", &InterferenceGraph::n_nodes)
      .def_property_readonly("radius", &InterferenceGraph::radius)
      .def("neighbors", &InterferenceGraph::neighbors, py::arg("n"))
      .def("degree", &InterferenceGraph::degree, py::arg("n"))
      .def("adjacent", &InterferenceGraph::adjacent, py::arg("i"), py::arg("j"))
      .def("edges", &InterferenceGraph::edges);

  m.def("generate_deployment", &generate_deployment, py::arg("n"), py::arg("area"),
        py::arg("seed"));
  m.def(
      "build_graph", [](const Deployment& d, double radius) { return build_graph(d, radius); },
      py::arg("deployment"), py::arg("radius"));
  m.def(
      "load_graph",
      [](const std::vector<std::pair<int, int>>& edges, int n) { return load_graph(edges, n); },
      py::arg("edges"), py::arg("n"));

  // ---- channel ----
  py::class_<ChannelModel>(m, "ChannelModel")
      .def(py::init([](int n_channels, std::vector<double> rates,
                       std::vector<std::vector<double>> probabilities, bool allow_unequal_means,
                       std::string label) {
             return ChannelModel(n_channels, std::move(rates), std::move(probabilities),
                                 {.allow_unequal_means = allow_unequal_means,
                                  .label = std::move(label)});
           }),
           py::arg("n_channels"), py::arg("rates"), py::arg("probabilities"),
           py::arg("allow_unequal_means") = false, py::arg("label") = "")
      .def_static("hiperlan2", &ChannelModel::hiperlan2, py::arg("n_channels"))
      .def_property_readonly("n_channels", &ChannelModel::n_channels)
      .def_property_readonly("rates", &ChannelModel::rates)
      .def("probabilities", &ChannelModel::probabilities, py::arg("m"))
      .def_property_readonly("max_rate", &ChannelModel::max_rate)
      .def_property_readonly("equal_means", &ChannelModel::equal_means)
      .def_property_readonly("label", &ChannelModel::label)
      .def("expected_rate", &ChannelModel::expected_rate, py::arg("m"))
      .def_property_readonly("common_expected_rate", &ChannelModel::common_expected_rate)
      .def(
          "sample_slot",
          [](const ChannelModel& cm, uint64_t seed) {
            Rng rng(seed);
            return cm.sample_slot(rng);
          },
          py::arg("seed"));

  // ---- game ----
  py::class_<GameInstance>(m, "GameInstance")
      .def(py::init<InterferenceGraph, ChannelModel>(), py::arg("graph"), py::arg("channels"))
      .def_readonly("graph", &GameInstance::graph)
      .def_readonly("channels", &GameInstance::channels)
      .def_property_readonly("n_players", &GameInstance::n_players)
      .def_property_readonly("n_channels", &GameInstance::n_channels);

  py::class_<DeviationWitness>(m, "DeviationWitness")
      .def_readonly("player", &DeviationWitness::player)
      .def_readonly("better_channel", &DeviationWitness::better_channel);

  py::class_<NashResult>(m, "NashResult")
      .def_readonly("is_nash", &NashResult::is_nash)
      .def_readonly("witness", &NashResult::witness)
      .def("__bool__", [](const NashResult& r) { return r.is_nash; });

  py::class_<NeEntry>(m, "NeEntry")
      .def_readonly("profile", &NeEntry::profile)
      .def_readonly("utilities", &NeEntry::utilities)
      .def_readonly("aggregate_utility", &NeEntry::aggregate_utility)
      .def_readonly("potential", &NeEntry::potential);

  py::class_<NeReport>(m, "NeReport")
      .def_readonly("equilibria", &NeReport::equilibria)
      .def_readonly("bound", &NeReport::bound)
      .def_readonly("profiles_checked", &NeReport::profiles_checked)
      .def("min_aggregate_utility", &NeReport::min_aggregate_utility);

  py::class_<OpgViolation>(m, "OpgViolation")
      .def_readonly("profile", &OpgViolation::profile)
      .def_readonly("player", &OpgViolation::player)
      .def_readonly("from_channel", &OpgViolation::from_channel)
      .def_readonly("to_channel", &OpgViolation::to_channel)
      .def_readonly("utility_delta", &OpgViolation::utility_delta)
      .def_readonly("potential_delta", &OpgViolation::potential_delta);

  py::class_<OpgResult>(m, "OpgResult")
      .def_readonly("is_ordinal_potential", &OpgResult::is_ordinal_potential)
      .def_readonly("violation", &OpgResult::violation)
      .def("__bool__", [](const OpgResult& r) { return r.is_ordinal_potential; });

  m.def("interference_count", &interference_count, py::arg("game"), py::arg("profile"),
        py::arg("n"));
  m.def("utility", &utility, py::arg("game"), py::arg("profile"), py::arg("n"));
  m.def("aggregate_throughput", &aggregate_throughput, py::arg("game"), py::arg("profile"));
  m.def("potential", &potential, py::arg("game"), py::arg("profile"));
  m.def("is_nash", &is_nash, py::arg("game"), py::arg("profile"));
  m.def("enumerate_equilibria", &enumerate_equilibria, py::arg("game"),
        py::arg("cap") = kDefaultEnumerationCap);
  m.def("throughput_lower_bound", &throughput_lower_bound, py::arg("game"));
  m.def("verify_ordinal_potential", &verify_ordinal_potential, py::arg("game"),
        py::arg("cap") = kDefaultEnumerationCap);
  m.def(
      "sample_instant_rate",
      [](const GameInstance& g, const ActionProfile& a, const ChannelStateSlot& slot, int n,
         uint64_t seed) {
        Rng rng(seed);
        return sample_instant_rate(g, a, slot, n, rng);
      },
      py::arg("game"), py::arg("profile"), py::arg("slot"), py::arg("n"), py::arg("seed"));

  // ---- learning ----
  py::class_<LearningConfig>(m, "LearningConfig")
      .def(py::init<>())
      .def_readwrite("step_size", &LearningConfig::step_size)
      .def_readwrite("per_player_step_sizes", &LearningConfig::per_player_step_sizes)
      .def_readwrite("max_iterations", &LearningConfig::max_iterations)
      .def_readwrite("convergence_threshold", &LearningConfig::convergence_threshold)
      .def_readwrite("seed", &LearningConfig::seed)
      .def_readwrite("record_snapshots", &LearningConfig::record_snapshots)
      .def_readwrite("snapshot_stride", &LearningConfig::snapshot_stride)
      .def_readwrite("record_rates", &LearningConfig::record_rates);

  py::class_<ConvergenceCheck>(m, "ConvergenceCheck")
      .def_readonly("converged", &ConvergenceCheck::converged)
      .def_readonly("profile", &ConvergenceCheck::profile);

  py::class_<StrategySnapshot>(m, "StrategySnapshot")
      .def_readonly("iteration", &StrategySnapshot::iteration)
      .def_readonly("q", &StrategySnapshot::q);

  py::class_<TrialRecord>(m, "TrialRecord")
      .def_readonly("converged", &TrialRecord::converged)
      .def_readonly("iterations", &TrialRecord::iterations)
      .def_readonly("final_profile", &TrialRecord::final_profile)
      .def_readonly("final_strategy", &TrialRecord::final_strategy)
      .def_readonly("snapshots", &TrialRecord::snapshots)
      .def_readonly("realized_rate_sums", &TrialRecord::realized_rate_sums);

  m.def("normalize_payoff", &normalize_payoff, py::arg("rate"), py::arg("channels"));
  m.def(
      "sla_update",
      [](const std::vector<double>& q, int chosen, double payoff, double alpha) {
        return sla_update(q, chosen, payoff, alpha);
      },
      py::arg("q"), py::arg("chosen"), py::arg("payoff"), py::arg("alpha"));
  m.def("detect_convergence", &detect_convergence, py::arg("q"), py::arg("threshold"));
  m.def("run_trial", &run_trial, py::arg("game"), py::arg("config"),
        py::call_guard<py::gil_scoped_release>());

  // ---- baselines ----
  py::class_<GenieGame>(m, "GenieGame")
      .def_static("from_game", &GenieGame::from_game, py::arg("game"))
      .def_readonly("expected_rates", &GenieGame::expected_rates)
      .def("utility", &GenieGame::utility, py::arg("profile"), py::arg("n"))
      .def("aggregate_throughput", &GenieGame::aggregate_throughput, py::arg("profile"));

  py::class_<BaselineConfig>(m, "BaselineConfig")
      .def(py::init<>())
      .def_readwrite("beta", &BaselineConfig::beta)
      .def_readwrite("update_prob", &BaselineConfig::update_prob)
      .def_readwrite("iterations", &BaselineConfig::iterations)
      .def_readwrite("seed", &BaselineConfig::seed);

  py::enum_<BaselineKind>(m, "BaselineKind")
      .value("SAP_NC", BaselineKind::kSapNc)
      .value("S_LOGIT", BaselineKind::kSLogit);

  m.def(
      "sap_nc_step",
      [](const GenieGame& gg, const ActionProfile& a, const BaselineConfig& cfg, uint64_t seed) {
        Rng rng(seed);
        return sap_nc_step(gg, a, cfg, rng);
      },
      py::arg("genie"), py::arg("profile"), py::arg("config"), py::arg("seed"));
  m.def(
      "s_logit_step",
      [](const GenieGame& gg, const ActionProfile& a, const BaselineConfig& cfg, uint64_t seed) {
        Rng rng(seed);
        return s_logit_step(gg, a, cfg, rng);
      },
      py::arg("genie"), py::arg("profile"), py::arg("config"), py::arg("seed"));
  m.def("run_baseline", &run_baseline, py::arg("genie"), py::arg("kind"), py::arg("config"),
        py::call_guard<py::gil_scoped_release>());

  // ---- harness ----
  py::class_<TrialRow>(m, "TrialRow")
      .def_readonly("algorithm", &TrialRow::algorithm)
      .def_readonly("trial_id", &TrialRow::trial_id)
      .def_readonly("converged", &TrialRow::converged)
      .def_readonly("iterations", &TrialRow::iterations)
      .def_readonly("final_profile", &TrialRow::final_profile)
      .def_readonly("final_utility", &TrialRow::final_utility)
      .def_readonly("is_ne", &TrialRow::is_ne)
      .def_readonly("failed", &TrialRow::failed);

  py::class_<AlgorithmAggregate>(m, "AlgorithmAggregate")
      .def_readonly("algorithm", &AlgorithmAggregate::algorithm)
      .def_readonly("trials", &AlgorithmAggregate::trials)
      .def_readonly("mean_utility", &AlgorithmAggregate::mean_utility)
      .def_readonly("std_utility", &AlgorithmAggregate::std_utility)
      .def_readonly("convergence_rate", &AlgorithmAggregate::convergence_rate)
      .def_readonly("mean_iterations", &AlgorithmAggregate::mean_iterations)
      .def_readonly("ne_rate", &AlgorithmAggregate::ne_rate);

  py::class_<ExperimentResult>(m, "ExperimentResult")
      .def_readonly("point_label", &ExperimentResult::point_label)
      .def_readonly("bound", &ExperimentResult::bound)
      .def_readonly("warning", &ExperimentResult::warning)
      .def_readonly("aggregates", &ExperimentResult::aggregates)
      .def_readonly("rows", &ExperimentResult::rows)
      .def("aggregate_csv", &ExperimentResult::aggregate_csv, py::arg("with_header") = true)
      .def("trials_csv", &ExperimentResult::trials_csv);

  m.def(
      "run_experiment_config",
      [](const std::string& config_json) {
        return run_experiment(io::config_from_json(nlohmann::json::parse(config_json)));
      },
      py::arg("config_json"), py::call_guard<py::gil_scoped_release>(),
      "Run an experiment from a JSON config string.");
  m.def(
      "run_sweep_config",
      [](const std::string& config_json) {
        return run_sweep(io::config_from_json(nlohmann::json::parse(config_json)));
      },
      py::arg("config_json"), py::call_guard<py::gil_scoped_release>(),
      "Run a sweep from a JSON config string; one result per point.");
}
