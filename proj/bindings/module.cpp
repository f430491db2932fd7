#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "tspr/behavior.hpp"
#include "tspr/calibration.hpp"
#include "tspr/config.hpp"
#include "tspr/design.hpp"
#include "tspr/errors.hpp"
#include "tspr/estimators.hpp"
#include "tspr/harness.hpp"
#include "tspr/marketplace.hpp"
#include "tspr/records.hpp"
#include "tspr/simulate.hpp"

namespace py = pybind11;
using namespace tspr;

namespace {

// span-taking overloads need owning-vector shims for python
EstimateReport py_estimate_tspr(const std::vector<QueryRecord>& a,
                                const std::vector<QueryRecord>& b, double ybar0,
                                std::size_t min_stratum) {
    return estimate_tspr(a, b, ybar0, min_stratum);
}

EstimateReport py_estimate_naive(const std::vector<QueryRecord>& records, double p) {
    return estimate_naive_is(records, p);
}

double py_estimate_ybar0(const std::vector<QueryRecord>& pre) { return estimate_ybar0(pre); }

FitResult py_fit_click(const std::vector<ImpressionRow>& rows) { return fit_click_model(rows); }

FitResult py_fit_booking(const std::vector<ImpressionRow>& rows) {
    const auto sets = build_choice_sets(rows);
    return fit_booking_model(sets);
}

MomentTargets py_compute_moments(const std::vector<ImpressionRow>& rows, int max_rank) {
    return compute_moments(rows, max_rank);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "two-sided prioritized ranking experiment simulator";

    py::register_exception<ConfigError>(m, "ConfigError");
    py::register_exception<DataError>(m, "DataError");
    py::register_exception<EstimationError>(m, "EstimationError");

    py::enum_<Group>(m, "Group")
        .value("Unassigned", Group::Unassigned)
        .value("Treated", Group::Treated)
        .value("Untreated", Group::Untreated)
        .value("Placebo", Group::Placebo);
    py::enum_<Arm>(m, "Arm")
        .value("A", Arm::A)
        .value("B", Arm::B)
        .value("PreExperiment", Arm::PreExperiment);
    py::enum_<OutcomeKind>(m, "OutcomeKind")
        .value("Booking", OutcomeKind::Booking)
        .value("ClickCount", OutcomeKind::ClickCount)
        .value("Revenue", OutcomeKind::Revenue);
    py::enum_<BookingMode>(m, "BookingMode")
        .value("MultinomialLogit", BookingMode::MultinomialLogit)
        .value("IndependentBernoulli", BookingMode::IndependentBernoulli);
    py::enum_<ScanDirection>(m, "ScanDirection")
        .value("TopDown", ScanDirection::TopDown)
        .value("BottomUp", ScanDirection::BottomUp);
    py::enum_<UtilityDist::Kind>(m, "UtilityKind")
        .value("Normal", UtilityDist::Kind::Normal)
        .value("Uniform", UtilityDist::Kind::Uniform);

    py::class_<UtilityDist>(m, "UtilityDist")
        .def(py::init<>())
        .def_readwrite("kind", &UtilityDist::kind)
        .def_readwrite("mean", &UtilityDist::mean)
        .def_readwrite("stddev", &UtilityDist::stddev)
        .def_readwrite("lo", &UtilityDist::lo)
        .def_readwrite("hi", &UtilityDist::hi);

    py::class_<CandidateCountSpec>(m, "CandidateCountSpec")
        .def(py::init<>())
        .def_readwrite("min", &CandidateCountSpec::min)
        .def_readwrite("max", &CandidateCountSpec::max);

    py::class_<DesignParams>(m, "DesignParams")
        .def(py::init<>())
        .def_readwrite("p", &DesignParams::p)
        .def_readwrite("r_min", &DesignParams::r_min)
        .def_readwrite("arm_prob", &DesignParams::arm_prob);

    py::class_<ClickParams>(m, "ClickParams")
        .def(py::init<>())
        .def_readwrite("b0", &ClickParams::b0)
        .def_readwrite("b_rank", &ClickParams::b_rank)
        .def_readwrite("b_rank2", &ClickParams::b_rank2)
        .def_readwrite("b_v", &ClickParams::b_v)
        .def_readwrite("b_prior", &ClickParams::b_prior);

    py::class_<BookingParams>(m, "BookingParams")
        .def(py::init<>())
        .def_readwrite("g_v", &BookingParams::g_v)
        .def_readwrite("outside_utility", &BookingParams::outside_utility);

    py::class_<BehaviorParams>(m, "BehaviorParams")
        .def(py::init<>())
        .def_readwrite("click", &BehaviorParams::click)
        .def_readwrite("booking", &BehaviorParams::booking)
        .def_readwrite("scan", &BehaviorParams::scan)
        .def_readwrite("booking_mode", &BehaviorParams::booking_mode)
        .def_readwrite("outcome", &BehaviorParams::outcome);

    py::class_<RunConfig>(m, "RunConfig")
        .def(py::init<>())
        .def_readwrite("master_seed", &RunConfig::master_seed)
        .def_readwrite("n_items", &RunConfig::n_items)
        .def_readwrite("utility", &RunConfig::utility)
        .def_readwrite("n_q", &RunConfig::n_q)
        .def_readwrite("sigma", &RunConfig::sigma)
        .def_readwrite("n_queries", &RunConfig::n_queries)
        .def_readwrite("n_pre_queries", &RunConfig::n_pre_queries)
        .def_readwrite("design", &RunConfig::design)
        .def_readwrite("min_listing_len", &RunConfig::min_listing_len)
        .def_readwrite("behavior", &RunConfig::behavior)
        .def_readwrite("delta", &RunConfig::delta)
        .def_readwrite("target_drop", &RunConfig::target_drop)
        .def_readwrite("treatment_affects_clicks", &RunConfig::treatment_affects_clicks)
        .def_readwrite("bootstrap_replicates", &RunConfig::bootstrap_replicates)
        .def_readwrite("bootstrap_resample_pre", &RunConfig::bootstrap_resample_pre)
        .def_readwrite("min_stratum", &RunConfig::min_stratum)
        .def_readwrite("runs", &RunConfig::runs)
        .def_readwrite("threads", &RunConfig::threads)
        .def_readwrite("hist_bins", &RunConfig::hist_bins)
        .def_readwrite("delta_tol", &RunConfig::delta_tol)
        .def_readwrite("delta_bracket_lo", &RunConfig::delta_bracket_lo)
        .def_readwrite("delta_bracket_hi", &RunConfig::delta_bracket_hi)
        .def_readwrite("n_calibration_queries", &RunConfig::n_calibration_queries)
        .def_readwrite("out_dir", &RunConfig::out_dir)
        .def("validate", &RunConfig::validate);

    py::class_<ItemOutcome>(m, "ItemOutcome")
        .def(py::init<>())
        .def_readwrite("item_id", &ItemOutcome::item_id)
        .def_readwrite("group", &ItemOutcome::group)
        .def_readwrite("y", &ItemOutcome::y);

    py::class_<QueryRecord>(m, "QueryRecord")
        .def(py::init<>())
        .def_readwrite("query_id", &QueryRecord::query_id)
        .def_readwrite("arm", &QueryRecord::arm)
        .def_readwrite("block_length", &QueryRecord::block_length)
        .def_readwrite("y_total", &QueryRecord::y_total)
        .def_readwrite("y_partial", &QueryRecord::y_partial)
        .def_readwrite("per_item", &QueryRecord::per_item);

    py::class_<StratumStats>(m, "StratumStats")
        .def_readonly("l", &StratumStats::l)
        .def_readonly("n_A", &StratumStats::n_A)
        .def_readonly("n_B", &StratumStats::n_B)
        .def_readonly("mean_y_A", &StratumStats::mean_y_A)
        .def_readonly("mean_y_B", &StratumStats::mean_y_B)
        .def_readonly("weight", &StratumStats::weight);

    py::class_<EstimateReport>(m, "EstimateReport")
        .def_readonly("method", &EstimateReport::method)
        .def_readonly("theta_hat", &EstimateReport::theta_hat)
        .def_readonly("se", &EstimateReport::se)
        .def_readonly("ybar0", &EstimateReport::ybar0)
        .def_readonly("strata", &EstimateReport::strata)
        .def_readonly("n_dropped_strata", &EstimateReport::n_dropped_strata)
        .def_readonly("dropped_weight", &EstimateReport::dropped_weight)
        .def_readonly("warnings", &EstimateReport::warnings);

    py::class_<GroundTruth>(m, "GroundTruth")
        .def_readonly("tate", &GroundTruth::tate)
        .def_readonly("conversion_none", &GroundTruth::conversion_none)
        .def_readonly("conversion_all", &GroundTruth::conversion_all)
        .def_readonly("delta", &GroundTruth::delta);

    py::class_<RunDiagnostics>(m, "RunDiagnostics")
        .def_readonly("n_queries", &RunDiagnostics::n_queries)
        .def_readonly("n_dropped_queries", &RunDiagnostics::n_dropped_queries);

    py::class_<PreExperimentResult>(m, "PreExperimentResult")
        .def_readonly("ybar0", &PreExperimentResult::ybar0)
        .def_readonly("records", &PreExperimentResult::records)
        .def_readonly("diag", &PreExperimentResult::diag);

    py::class_<ExperimentResult>(m, "ExperimentResult")
        .def_readonly("report", &ExperimentResult::report)
        .def_readonly("ybar0", &ExperimentResult::ybar0)
        .def_readonly("records_a", &ExperimentResult::records_a)
        .def_readonly("records_b", &ExperimentResult::records_b)
        .def_readonly("records", &ExperimentResult::records)
        .def_readonly("diag", &ExperimentResult::diag);

    py::class_<RunRow>(m, "RunRow")
        .def_readonly("run", &RunRow::run)
        .def_readonly("method", &RunRow::method)
        .def_readonly("theta_hat", &RunRow::theta_hat)
        .def_readonly("se", &RunRow::se)
        .def_readonly("covered_95", &RunRow::covered_95);

    py::class_<MethodSummary>(m, "MethodSummary")
        .def_readonly("method", &MethodSummary::method)
        .def_readonly("mean", &MethodSummary::mean)
        .def_readonly("stddev", &MethodSummary::stddev)
        .def_readonly("mean_se", &MethodSummary::mean_se)
        .def_readonly("coverage", &MethodSummary::coverage)
        .def_readonly("n_ok", &MethodSummary::n_ok)
        .def_readonly("n_failed", &MethodSummary::n_failed);

    py::class_<HistBin>(m, "HistBin")
        .def_readonly("method", &HistBin::method)
        .def_readonly("lo", &HistBin::lo)
        .def_readonly("hi", &HistBin::hi)
        .def_readonly("count", &HistBin::count);

    py::class_<MonteCarloSummary>(m, "MonteCarloSummary")
        .def_readonly("truth", &MonteCarloSummary::truth)
        .def_readonly("rows", &MonteCarloSummary::rows)
        .def_readonly("tspr", &MonteCarloSummary::tspr)
        .def_readonly("naive", &MonteCarloSummary::naive)
        .def_readonly("hist", &MonteCarloSummary::hist);

    py::class_<SensitivityCell>(m, "SensitivityCell")
        .def_readonly("r_min", &SensitivityCell::r_min)
        .def_readonly("tspr", &SensitivityCell::tspr)
        .def_readonly("n_zero_strata_runs", &SensitivityCell::n_zero_strata_runs);

    py::class_<PartialCurveRow>(m, "PartialCurveRow")
        .def_readonly("l", &PartialCurveRow::l)
        .def_readonly("scenario", &PartialCurveRow::scenario)
        .def_readonly("mean_partial", &PartialCurveRow::mean_partial);

    py::class_<ProportionalityRow>(m, "ProportionalityRow")
        .def_readonly("l", &ProportionalityRow::l)
        .def_readonly("theta_l_measured", &ProportionalityRow::theta_l_measured)
        .def_readonly("theta_l_predicted", &ProportionalityRow::theta_l_predicted)
        .def_readonly("rel_deviation", &ProportionalityRow::rel_deviation)
        .def_readonly("se", &ProportionalityRow::se);

    py::class_<ImpressionRow>(m, "ImpressionRow")
        .def(py::init<>())
        .def_readwrite("impression_id", &ImpressionRow::impression_id)
        .def_readwrite("position", &ImpressionRow::position)
        .def_readwrite("item_id", &ImpressionRow::item_id)
        .def_readwrite("clicked", &ImpressionRow::clicked)
        .def_readwrite("booked", &ImpressionRow::booked)
        .def_readwrite("random_sort", &ImpressionRow::random_sort)
        .def_readwrite("utility_proxy", &ImpressionRow::utility_proxy);

    py::class_<FitResult>(m, "FitResult")
        .def_readonly("coefficients", &FitResult::coefficients)
        .def_readonly("log_likelihood", &FitResult::log_likelihood)
        .def_readonly("gradient_norm", &FitResult::gradient_norm)
        .def_readonly("converged", &FitResult::converged)
        .def_readonly("iterations", &FitResult::iterations)
        .def_readonly("warnings", &FitResult::warnings);

    py::class_<MomentTargets>(m, "MomentTargets")
        .def(py::init<>())
        .def_readwrite("ctr_by_rank", &MomentTargets::ctr_by_rank)
        .def_readwrite("clicks_per_impression", &MomentTargets::clicks_per_impression)
        .def_readwrite("bookings_per_impression", &MomentTargets::bookings_per_impression);

    py::class_<HyperGrid>(m, "HyperGrid")
        .def(py::init<>())
        .def_readwrite("sigmas", &HyperGrid::sigmas)
        .def_readwrite("n_qs", &HyperGrid::n_qs);

    py::class_<HyperCell>(m, "HyperCell")
        .def_readonly("sigma", &HyperCell::sigma)
        .def_readonly("n_q", &HyperCell::n_q)
        .def_readonly("loss", &HyperCell::loss);

    py::class_<HyperSearchResult>(m, "HyperSearchResult")
        .def_readonly("best", &HyperSearchResult::best)
        .def_readonly("surface", &HyperSearchResult::surface);

    py::class_<DeltaCalibration>(m, "DeltaCalibration")
        .def_readonly("delta", &DeltaCalibration::delta)
        .def_readonly("achieved_drop", &DeltaCalibration::achieved_drop)
        .def_readonly("evaluations", &DeltaCalibration::evaluations);

    m.def("derive_seed", &derive_seed, py::arg("master"), py::arg("a"), py::arg("b") = 0,
          py::arg("c") = 0);
    m.def("sigmoid", &sigmoid);
    m.def("click_probability", &click_probability, py::arg("position"), py::arg("v_effective"),
          py::arg("prior_clicks"), py::arg("params"));

    m.def("run_ground_truth", &run_ground_truth, py::arg("cfg"), py::arg("delta"),
          py::call_guard<py::gil_scoped_release>());
    m.def("run_pre_experiment", &run_pre_experiment, py::arg("cfg"), py::arg("run_seed"),
          py::call_guard<py::gil_scoped_release>());
    m.def("run_tspr_experiment", &run_tspr_experiment, py::arg("cfg"), py::arg("run_seed"),
          py::arg("delta"), py::arg("keep_records") = true,
          py::call_guard<py::gil_scoped_release>());
    m.def("run_naive_experiment", &run_naive_experiment, py::arg("cfg"), py::arg("run_seed"),
          py::arg("delta"), py::arg("keep_records") = true,
          py::call_guard<py::gil_scoped_release>());
    m.def("run_monte_carlo", &run_monte_carlo, py::arg("cfg"),
          py::call_guard<py::gil_scoped_release>());
    m.def("run_sensitivity", &run_sensitivity, py::arg("cfg"), py::arg("r_min_grid"),
          py::call_guard<py::gil_scoped_release>());
    m.def("run_partial_outcome_curves", &run_partial_outcome_curves, py::arg("cfg"),
          py::arg("delta"), py::call_guard<py::gil_scoped_release>());
    m.def("diagnose_proportionality", &diagnose_proportionality, py::arg("cfg"),
          py::arg("delta"), py::arg("l_values"), py::call_guard<py::gil_scoped_release>());
    m.def("resolve_delta", &resolve_delta, py::arg("cfg"),
          py::call_guard<py::gil_scoped_release>());
    m.def("calibrate_delta", &calibrate_delta, py::arg("cfg"), py::arg("target_drop"),
          py::arg("tol"), py::arg("bracket_lo"), py::arg("bracket_hi"),
          py::call_guard<py::gil_scoped_release>());

    m.def("estimate_ybar0", &py_estimate_ybar0, py::arg("pre_records"));
    m.def("estimate_tspr", &py_estimate_tspr, py::arg("records_a"), py::arg("records_b"),
          py::arg("ybar0"), py::arg("min_stratum") = 1);
    m.def("estimate_naive_is", &py_estimate_naive, py::arg("records"), py::arg("p"));

    m.def("generate_impression_log", &generate_impression_log, py::arg("cfg"),
          py::arg("n_impressions"), py::arg("random_frac"), py::arg("seed"),
          py::call_guard<py::gil_scoped_release>());
    m.def("fit_click_model", &py_fit_click, py::arg("rows"),
          py::call_guard<py::gil_scoped_release>());
    m.def("fit_booking_model", &py_fit_booking, py::arg("rows"),
          py::call_guard<py::gil_scoped_release>());
    m.def("compute_moments", &py_compute_moments, py::arg("rows"), py::arg("max_rank") = 0);
    m.def("calibrate_hyperparams", &calibrate_hyperparams, py::arg("targets"), py::arg("grid"),
          py::arg("cfg"), py::arg("n_sim_impressions"), py::arg("seed"),
          py::call_guard<py::gil_scoped_release>());
    m.def("simulate_ctr_by_rank", &simulate_ctr_by_rank, py::arg("cfg"),
          py::arg("n_impressions"), py::arg("seed"), py::arg("max_rank") = 0,
          py::call_guard<py::gil_scoped_release>());
    m.def("load_impressions",
          [](const std::filesystem::path& p) { return load_impressions(p); }, py::arg("path"));
    m.def("write_impressions_csv",
          [](const std::filesystem::path& p, const std::vector<ImpressionRow>& rows) {
              write_impressions_csv(p, rows);
          },
          py::arg("path"), py::arg("rows"));

    py::class_<LoadReport>(m, "LoadReport")
        .def_readonly("rows", &LoadReport::rows)
        .def_readonly("n_skipped", &LoadReport::n_skipped)
        .def_readonly("n_violations", &LoadReport::n_violations);
}
