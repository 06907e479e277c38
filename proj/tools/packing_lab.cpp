// packing_lab: command-line front end for the packing-index library.
//
// Exit codes: 0 success, 2 input or parse error, 3 size-guard refusal,
// 4 certificate or verification failure.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <limits>
#include <new>
#include <string>

#include "CLI11.hpp"
#include "packlab/io.hpp"
#include "packlab/packlab.hpp"

namespace {

using packlab::io::Json;

constexpr int kExitInput = 2;
constexpr int kExitSizeGuard = 3;
constexpr int kExitVerification = 4;

void emit(const std::string& out_path, const std::string& body) {
  if (out_path.empty()) {
    std::cout << body;
  } else {
    packlab::io::write_text_file(out_path, body);
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

packlab::TerminalMode parse_terminal(const std::string& s) {
  if (s == "sparse") return packlab::TerminalMode::kSparse;
  if (s == "dense") return packlab::TerminalMode::kDense;
  throw packlab::InputError("terminal mode must be sparse or dense, got '" + s + "'");
}

packlab::CorrMethod parse_method(const std::string& s) {
  if (s == "auto") return packlab::CorrMethod::kAuto;
  if (s == "naive") return packlab::CorrMethod::kNaive;
  if (s == "transform") return packlab::CorrMethod::kTransform;
  throw packlab::InputError("method must be auto, naive or transform, got '" + s + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Packing indices of subsets of finite Abelian groups"};
  app.require_subcommand(1);
  app.fallthrough();

  bool allow_large = false;
  std::uint64_t seed = 0;
  app.add_flag("--allow-large", allow_large, "Lift the 2^30-element group size guard");
  app.add_option("--seed", seed, "Seed for every randomized step")->capture_default_str();

  // index
  auto* index = app.add_subcommand("index", "Packing index of a set (PackingReport JSON)");
  std::string index_group, index_set, index_in, index_out;
  std::int64_t index_t = 0;
  std::size_t effort = 1;
  bool exact = false, heuristic = false;
  index->add_option("--group", index_group, "Group, e.g. Z:6, Z:9x9, Z2^4");
  index->add_option("--set", index_set, "Set literal, e.g. 0,1 or 0,0;0,1");
  index->add_option("--in", index_in, "Set file (JSON)");
  index->add_option("--t", index_t, "Intersection threshold t")->capture_default_str();
  auto* exact_flag = index->add_flag("--exact", exact, "Exact branch-and-bound solver (default)");
  index->add_flag("--heuristic", heuristic, "Greedy lower bound with restarts")->excludes(exact_flag);
  index->add_option("--effort", effort, "Heuristic restart count")->capture_default_str();
  index->add_option("--out", index_out, "Write the report here instead of stdout");

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "Histogram of sharp indices over all subsets (CSV)");
  std::string spectrum_group, spectrum_out, spectrum_notes;
  std::int64_t spectrum_t = 0;
  bool reduce_symmetry = false;
  spectrum->add_option("--group", spectrum_group, "Group")->required();
  spectrum->add_option("--t", spectrum_t, "Intersection threshold t")->capture_default_str();
  spectrum->add_flag("--reduce-symmetry", reduce_symmetry, "Only enumerate subsets containing 0");
  spectrum->add_option("--out", spectrum_out, "CSV output path");
  spectrum->add_option("--annotations", spectrum_notes, "JSON path for torsion annotations");

  // diffset
  auto* diffset = app.add_subcommand("diffset", "Difference set A - A");
  std::string diff_in, diff_out;
  diffset->add_option("--in", diff_in, "Set file")->required();
  diffset->add_option("--out", diff_out, "Output set file");

  // corr
  auto* corr = app.add_subcommand("corr", "Correlation table |A ∩ (g + B)|");
  std::string corr_a, corr_b, corr_out, corr_method = "auto";
  corr->add_option("--a", corr_a, "Set file A")->required();
  corr->add_option("--b", corr_b, "Set file B")->required();
  corr->add_option("--out", corr_out, "CSV output path");
  corr->add_option("--method", corr_method, "auto, naive or transform")->capture_default_str();

  // construct-sigma
  auto* sigma = app.add_subcommand("construct-sigma", "Build the multi-scale pair A, B and check it");
  int sigma_dim = 1, sigma_levels = 3;
  std::string sigma_terminal = "sparse", sigma_out, sigma_export;
  sigma->add_option("--dim", sigma_dim, "Dimension")->capture_default_str();
  sigma->add_option("--levels", sigma_levels, "Number of scales")->capture_default_str();
  sigma->add_option("--terminal", sigma_terminal, "sparse or dense")->capture_default_str();
  sigma->add_option("--out", sigma_out, "Report path");
  sigma->add_option("--export-sets", sigma_export, "Directory for H_n, A, B, C set files");

  // construct-tree
  auto* tree = app.add_subcommand("construct-tree", "Binary-product family of disjoint translates");
  std::string tree_in, tree_out;
  std::size_t max_depth = 8;
  tree->add_option("--in", tree_in, "Set file")->required();
  tree->add_option("--max-depth", max_depth, "Maximum number of steps")->capture_default_str();
  tree->add_option("--out", tree_out, "Set file for the family S");

  // cover
  auto* cover = app.add_subcommand("cover", "Does A come within delta of every point?");
  std::string cover_in;
  std::int64_t delta = 0;
  cover->add_option("--in", cover_in, "Set file")->required();
  cover->add_option("--delta", delta, "Closed distance tolerance in grid units")->capture_default_str();

  // demo-union
  auto* demo = app.add_subcommand("demo-union", "Full union pipeline with certificates");
  int demo_dim = 1, demo_levels = 3;
  std::string demo_terminal = "dense", demo_out;
  std::size_t demo_depth = 8, demo_walks = 16;
  demo->add_option("--dim", demo_dim, "Dimension")->capture_default_str();
  demo->add_option("--levels", demo_levels, "Number of scales")->capture_default_str();
  demo->add_option("--terminal", demo_terminal, "sparse or dense")->capture_default_str();
  demo->add_option("--generator-depth", demo_depth, "Maximum generator depth")->capture_default_str();
  demo->add_option("--walks", demo_walks, "Number of tree walks")->capture_default_str();
  demo->add_option("--out", demo_out, "Report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  const std::size_t guard = allow_large ? std::numeric_limits<std::size_t>::max() : packlab::kDefaultSizeGuard;

  try {
    if (index->parsed()) {
      if (index_in.empty() == index_group.empty()) {
        throw packlab::InputError("index needs either --group with --set, or --in");
      }
      const packlab::DenseSet a = index_in.empty()
                                      ? packlab::io::parse_set_literal(packlab::io::parse_group(index_group, guard), index_set)
                                      : packlab::io::read_set_file(index_in, guard);
      const auto report = heuristic ? packlab::packing_index_lower(a, index_t, effort, seed)
                                    : packlab::packing_index_exact(a, index_t);
      emit(index_out, dump(packlab::io::packing_report_to_json(report)));
    } else if (spectrum->parsed()) {
      const auto result = packlab::spectrum_scan(packlab::io::parse_group(spectrum_group, guard), spectrum_t,
                                                 reduce_symmetry);
      emit(spectrum_out, packlab::io::spectrum_csv(result));
      const auto notes = packlab::io::spectrum_annotation(result);
      if (!spectrum_notes.empty()) packlab::io::write_text_file(spectrum_notes, dump(notes));
      if (result.four_counterexample() || result.three_counterexample()) {
        std::cerr << "note: observed a sharp value outside the torsion-predicted range: " << notes.dump() << "\n";
      }
    } else if (diffset->parsed()) {
      const auto d = packlab::difference_set(packlab::io::read_set_file(diff_in, guard));
      emit(diff_out, dump(packlab::io::set_to_json(d)));
    } else if (corr->parsed()) {
      const auto a = packlab::io::read_set_file(corr_a, guard);
      const auto b = packlab::io::read_set_file(corr_b, guard);
      const auto table = packlab::cross_correlation(a, b, parse_method(corr_method));
      if (!corr_out.empty()) packlab::io::write_text_file(corr_out, packlab::io::corr_csv(table));
      std::cout << dump(packlab::io::corr_summary(table));
    } else if (sigma->parsed()) {
      const auto schedule = packlab::make_schedule(sigma_dim, sigma_levels, parse_terminal(sigma_terminal), guard);
      const auto levels = packlab::build_levels(schedule, guard);
      const auto pair = packlab::sigma_sets(levels);
      if (!sigma_export.empty()) {
        std::filesystem::create_directories(sigma_export);
        const std::filesystem::path dir(sigma_export);
        for (std::size_t n = 0; n < levels.levels(); ++n) {
          packlab::io::write_set_file((dir / ("H" + std::to_string(n) + ".json")).string(), levels.sets[n]);
        }
        packlab::io::write_set_file((dir / "A.json").string(), pair.a);
        packlab::io::write_set_file((dir / "B.json").string(), pair.b);
        packlab::io::write_set_file((dir / "C.json").string(), pair.c);
      }
      emit(sigma_out, dump(packlab::io::sigma_to_json(pair)));
    } else if (tree->parsed()) {
      const auto a = packlab::io::read_set_file(tree_in, guard);
      const auto result = packlab::perfect_tree_generator(a, max_depth);
      if (!tree_out.empty()) {
        packlab::io::write_set_file(tree_out, packlab::DenseSet::from_indices(a.group(), result.family));
      }
      Json summary = packlab::io::generator_to_json(a.group(), result);
      summary.erase("family");
      Json j;
      j["schema"] = packlab::io::kSchema;
      j.update(summary);
      std::cout << dump(j);
    } else if (cover->parsed()) {
      const bool ok = packlab::covers(packlab::io::read_set_file(cover_in, guard), packlab::NormValue{delta});
      std::cout << dump(Json{{"ok", ok}});
    } else if (demo->parsed()) {
      const auto schedule = packlab::make_schedule(demo_dim, demo_levels, parse_terminal(demo_terminal), guard);
      const auto report = packlab::union_demo(schedule, demo_depth, demo_walks, seed);
      emit(demo_out, dump(packlab::io::union_to_json(report)));
    }
  } catch (const packlab::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const packlab::SizeGuardError& e) {
    std::cerr << "size guard: " << e.what() << "\n";
    return kExitSizeGuard;
  } catch (const packlab::VerificationError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kExitVerification;
  } catch (const std::bad_alloc&) {
    std::cerr << "size guard: out of memory; try a smaller group\n";
    return kExitSizeGuard;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
