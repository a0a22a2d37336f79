#include <gtest/gtest.h>

#include <filesystem>
#include <regex>

#include "fda/experiment.hpp"
#include "fda/reference.hpp"

namespace fda::runner {
namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("fda_runner_test_" + name);
  fs::remove_all(p);
  return p;
}

ExperimentPlan small_plan(const fs::path& out) {
  ExperimentPlan plan;
  plan.dimensions = {2};
  plan.functions = {1};
  plan.instances = {1, 2, 3};
  plan.budget_multiplier = 200;
  plan.out = out;
  return plan;
}

TEST(ParseIdList, RangesAndDuplicates) {
  EXPECT_EQ(parse_id_list("1,2,5-8"), (std::vector<int>{1, 2, 5, 6, 7, 8}));
  EXPECT_EQ(parse_id_list(" 3, 1,3 "), (std::vector<int>{1, 3}));
  EXPECT_TRUE(parse_id_list("").empty());
  EXPECT_THROW(parse_id_list("1,x"), std::invalid_argument);
  EXPECT_THROW(parse_id_list("5-2"), std::invalid_argument);
}

TEST(Config, TextAndSettings) {
  ExperimentPlan plan;
  apply_config_text(plan, "# comment\ndims = 2,5\nfunctions = 1-3\nbudget_multiplier = 50\norder = ascending\n");
  EXPECT_EQ(plan.dimensions, (std::vector<int>{2, 5}));
  EXPECT_EQ(plan.functions, (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(plan.budget_for(5), 250);
  EXPECT_EQ(plan.fda.order, QualityOrder::Ascending);
  EXPECT_THROW(apply_config_text(plan, "bogus = 1\n"), std::invalid_argument);
  EXPECT_THROW(apply_config_text(plan, "depth\n"), std::invalid_argument);
  EXPECT_THROW(apply_setting(plan, "alpha", "abc"), std::invalid_argument);
}

TEST(RunLogFormat, RoundTrip) {
  RunLog log{{3, 5, 7}, -12.34, 5000, 5000, "budget", -12.3, {{1, 321.5}, {17, 0.125}, {4000, 1e-9}}};
  const std::string text = format_run_log(log);
  EXPECT_TRUE(text.starts_with("# format-version=1\n"));
  const RunLog back = parse_run_log(text);
  EXPECT_EQ(back.problem, log.problem);
  EXPECT_EQ(back.f_opt, log.f_opt);
  EXPECT_EQ(back.budget, log.budget);
  EXPECT_EQ(back.evaluations_used, log.evaluations_used);
  EXPECT_EQ(back.stop, log.stop);
  EXPECT_EQ(back.best_value, log.best_value);
  EXPECT_EQ(back.points, log.points);
  EXPECT_EQ(format_run_log(back), text);
}

TEST(RunLogFormat, MalformedInputNamesLine) {
  const std::string good = format_run_log({{1, 2, 1}, 0.0, 100, 50, "budget", 1.0, {{1, 5.0}, {9, 1.0}}});
  try {
    parse_run_log(good + "10,7.0\n", "x.csv");
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("x.csv:14"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_run_log(good + "3,0.5\n"), std::runtime_error);
  EXPECT_THROW(parse_run_log(good + "abc\n"), std::runtime_error);
  EXPECT_THROW(parse_run_log(good.substr(good.find('\n') + 1)), std::runtime_error);
  EXPECT_THROW(parse_run_log(std::regex_replace(good, std::regex("format-version=1"), "format-version=2")),
               std::runtime_error);
}

TEST(Reference, ImportAndJoin) {
  const std::string text = "function\tdimension\tdelta_I\taRT\n1\t2\t1e-08\t400\n1\t2\t1\t20\n3\t5\t1e-08\tinf\n";
  const auto ref = parse_reference(text);
  EXPECT_EQ(ref.size(), 3u);
  EXPECT_EQ(ref.at(CellKey::make(1, 2, 1e-8)).art, 400.0);
  EXPECT_TRUE(ref.contains(CellKey::make(1, 2, std::pow(10.0, -8.0))));
  const TsvTable art{{"function", "dimension", "delta_I", "n_s", "fes", "art"},
                     {{"1", "2", "1e-08", "15", "3000", "200"}, {"2", "2", "1e-08", "0", "30000", "inf"}}};
  const auto joined = join_reference(art, ref);
  ASSERT_EQ(joined.rows.size(), 1u);
  EXPECT_EQ(joined.rows[0][5], "0.5");
}

TEST(Reference, NonNumericArtIsReportedWithLine) {
  const std::string text = "function\tdimension\tdelta_I\taRT\n1\t2\t1e-08\t400\n1\t2\t1\tfast\n";
  try {
    parse_reference(text, "ref.tsv");
    FAIL();
  } catch (const ReferenceImportError& e) {
    EXPECT_NE(std::string(e.what()).find("ref.tsv:3"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("aRT"), std::string::npos);
  }
}

TEST(Reference, DuplicatesAndMissingHeaderRejected) {
  EXPECT_THROW(parse_reference("function\tdimension\tdelta_I\taRT\n1\t2\t1e-08\t4\n1\t2\t1e-8\t5\n"),
               ReferenceImportError);
  EXPECT_THROW(parse_reference("1\t2\t1e-08\t4\n"), ReferenceImportError);
  EXPECT_THROW(parse_reference(""), ReferenceImportError);
}

TEST(Plots, FlatEcdfAndOneFilePerGroupDimension) {
  TsvTable t{{"group", "dimension", "evals_per_dim", "fraction"}, {}};
  for (double b : {1.0, 10.0, 100.0}) t.rows.push_back({"separable", "2", io::format_double(b), "0"});
  const std::string svg = render_ecdf_svg(t);
  const std::regex pts(R"rx(<polyline[^>]*points="([^"]*)")rx");
  std::smatch m;
  ASSERT_TRUE(std::regex_search(svg, m, pts));
  std::set<std::string> ys;
  std::istringstream in(m[1].str());
  for (std::string xy; in >> xy;) ys.insert(xy.substr(xy.find(',') + 1));
  EXPECT_EQ(ys.size(), 1u);

  const FileSet plots = emit_plots({{"tables/ecdf_separable_d2.tsv", format_tsv(t)}});
  ASSERT_EQ(plots.size(), 1u);
  EXPECT_TRUE(plots.contains("plots/ecdf_separable_d2.svg"));
}

TEST(Plots, ScalingHasOnePointPerDimension) {
  TsvTable t{{"function", "delta_I", "dimension", "art", "n_s", "n_trials"}, {}};
  for (const char* d : {"2", "3", "5"}) {
    t.rows.push_back({"1", "1", d, "100", "15", "15"});
    t.rows.push_back({"1", "1e-08", d, "1000", "15", "15"});
    t.rows.push_back({"1", "0.63095734448019325", d, "500", "15", "15"});
  }
  const std::string svg = render_scaling_svg(t);
  const std::regex pts(R"rx(<polyline[^>]*points="([^"]*)")rx");
  int lines = 0;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), pts); it != std::sregex_iterator(); ++it) {
    std::istringstream in((*it)[1].str());
    int n = 0;
    for (std::string xy; in >> xy;) ++n;
    EXPECT_EQ(n, 3);
    ++lines;
  }
  EXPECT_EQ(lines, 2);
}

TEST(Experiment, FifteenInstancesWithExactBudget) {
  const fs::path out = scratch("fifteen");
  ExperimentPlan plan = small_plan(out);
  plan.budget_multiplier = 1000;
  plan.instances = parse_id_list("1-15");
  const auto result = run_experiment(plan);
  EXPECT_EQ(result.failures, 0u);
  ASSERT_EQ(result.runs.size(), 15u);
  int logs = 0;
  for (const auto& e : fs::directory_iterator(out / "logs")) logs += e.path().extension() == ".csv";
  EXPECT_EQ(logs, 15);
  for (const auto& r : result.runs) {
    EXPECT_EQ(r.log.budget, 2000);
    EXPECT_LE(r.log.evaluations_used, 2000);
  }
  EXPECT_TRUE(fs::exists(out / "tables/art.tsv"));
  EXPECT_TRUE(fs::exists(out / "plots/ecdf_separable_d2.svg"));
  EXPECT_TRUE(verify(out).ok());
  fs::remove_all(out);
}

TEST(Experiment, EmptyMatrixProducesEmptyManifest) {
  const fs::path out = scratch("empty");
  ExperimentPlan plan = small_plan(out);
  plan.dimensions.clear();
  const auto result = run_experiment(plan);
  EXPECT_TRUE(result.runs.empty());
  const auto manifest = read_manifest(out);
  EXPECT_TRUE(manifest.at("runs").empty());
  EXPECT_TRUE(verify(out).ok());
  fs::remove_all(out);
}

TEST(Experiment, RerunIsByteIdenticalAcrossJobCounts) {
  const fs::path a = scratch("rerun_a"), b = scratch("rerun_b");
  ExperimentPlan pa = small_plan(a), pb = small_plan(b);
  pa.functions = pb.functions = {1, 3, 8};
  pb.jobs = 3;
  const auto ra = run_experiment(pa);
  const auto ra2 = run_experiment(pa);
  const auto rb = run_experiment(pb);
  EXPECT_EQ(ra.manifest_hash, ra2.manifest_hash);
  for (const std::string& rel : list_outputs(a)) EXPECT_EQ(io::read_file(a / rel), io::read_file(b / rel)) << rel;
  EXPECT_EQ(list_outputs(a), list_outputs(b));
  EXPECT_EQ(ra.manifest_hash, rb.manifest_hash);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Experiment, UnimplementedFunctionIsAPerRunFailure) {
  const fs::path out = scratch("unimpl");
  ExperimentPlan plan = small_plan(out);
  plan.functions = {1, 4};
  const auto result = run_experiment(plan);
  EXPECT_EQ(result.failures, 3u);
  const auto manifest = read_manifest(out);
  int failed = 0;
  for (const auto& r : manifest.at("runs")) failed += r.at("status") == "failed";
  EXPECT_EQ(failed, 3);
  EXPECT_TRUE(verify(out).ok());
  fs::remove_all(out);
}

TEST(Experiment, VerifyDetectsTampering) {
  const fs::path out = scratch("tamper");
  run_experiment(small_plan(out));
  ASSERT_TRUE(verify(out).ok());

  const fs::path table = out / "tables/art.tsv";
  const std::string original = io::read_file(table);
  io::write_file_atomic(table, original + "1\t2\t1\t0\t0\tinf\n");
  EXPECT_FALSE(verify(out).ok());
  io::write_file_atomic(table, original);
  ASSERT_TRUE(verify(out).ok());

  io::write_file_atomic(out / "plots/extra.svg", "<svg/>");
  EXPECT_FALSE(verify(out).ok());
  fs::remove(out / "plots/extra.svg");

  const fs::path log = out / "logs/f1_d2_i1.csv";
  const std::string log_text = io::read_file(log);
  io::write_file_atomic(log, std::regex_replace(log_text, std::regex("# best_value=[^\n]*"), "# best_value=0"));
  const auto report = verify(out);
  EXPECT_FALSE(report.ok());
  fs::remove_all(out);
}

TEST(Experiment, ManifestHashTracksConfiguration) {
  const fs::path out = scratch("hash");
  ExperimentPlan plan = small_plan(out);
  const auto h1 = run_experiment(plan).manifest_hash;
  plan.fda.geometry.alpha = 0.2;
  const auto h2 = run_experiment(plan).manifest_hash;
  EXPECT_NE(h1, h2);
  plan.fda.geometry.alpha = 0.1;
  EXPECT_EQ(run_experiment(plan).manifest_hash, h1);
  plan.out = scratch("hash_elsewhere");
  EXPECT_EQ(run_experiment(plan).manifest_hash, h1);
  fs::remove_all(out);
  fs::remove_all(plan.out);
}

}  // namespace
}  // namespace fda::runner
