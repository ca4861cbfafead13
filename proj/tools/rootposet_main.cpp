// Command-line front end: verify fixtures, run the poset searches, inspect
// orbits, and reproduce the q,t-Catalan computations.

#include <algorithm>
#include <cctype>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rootposet/h3_from_d6.hpp"
#include "rootposet/invariants.hpp"
#include "rootposet/poset.hpp"
#include "rootposet/profiles.hpp"
#include "rootposet/qt_poly.hpp"
#include "rootposet/search.hpp"

namespace rp = rootposet;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c);
  });
}

// "1-4,5a" and friends; a bare range endpoint of 5 expands to the multiset
// check plus both homomesy variants.
std::vector<rp::Property> parse_property_list(const std::string& spec) {
  std::vector<rp::Property> out;
  auto add = [&](rp::Property p) {
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  };
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    const auto dash = tok.find('-');
    std::string lo_s = dash == std::string::npos ? "" : tok.substr(0, dash);
    std::string hi_s = dash == std::string::npos ? "" : tok.substr(dash + 1);
    if (all_digits(lo_s) && all_digits(hi_s)) {
      const int lo = std::stoi(lo_s), hi = std::stoi(hi_s);
      if (lo < 1 || hi > 6 || lo > hi)
        throw usage_error("bad property range: " + tok);
      for (int i = lo; i <= hi; ++i) {
        if (i == 5) {
          add(rp::Property::P5Multiset);
          add(rp::Property::P5a);
          add(rp::Property::P5b);
        } else {
          add(rp::parse_property(std::to_string(i)));
        }
      }
    } else if (tok == "5") {
      add(rp::Property::P5Multiset);
      add(rp::Property::P5a);
      add(rp::Property::P5b);
    } else {
      add(rp::parse_property(tok));
    }
  }
  if (out.empty()) throw usage_error("empty property list");
  return out;
}

json property_names(const std::vector<rp::Property>& props) {
  json names = json::array();
  for (rp::Property p : props) names.push_back(rp::property_name(p));
  return names;
}

std::string join_args(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

int cmd_verify(const std::string& poset_file, const std::string& profile_name,
               const std::string& props_spec) {
  const rp::RootSystemProfile profile = rp::profile_for(profile_name);
  std::vector<rp::Property> props;
  if (props_spec.empty()) {
    props = parse_property_list(profile.qt_summands ? "1-6" : "1-5");
  } else {
    props = parse_property_list(props_spec);
  }
  const rp::GradedPoset p = rp::read_poset_file(poset_file);
  const rp::PropertyReport report = rp::check_properties(p, profile, props);
  std::cout << report.to_text();
  std::cout << "result " << (report.all_pass() ? "pass" : "fail") << "\n";
  return report.all_pass() ? kExitPass : kExitFail;
}

int cmd_orbits(const std::string& poset_file) {
  const rp::GradedPoset p = rp::read_poset_file(poset_file);
  for (const bool restricted : {false, true}) {
    const rp::OrbitDecomposition dec =
        restricted ? rp::restricted_panyushev_orbits(p) : rp::panyushev_orbits(p);
    const char* tag = restricted ? "restricted" : "full";
    for (const auto& orbit : dec.orbits) {
      const rp::Rational avg = orbit.average_size();
      std::cout << tag << " orbit length " << orbit.length() << " average "
                << avg.numerator() << "/" << avg.denominator() << "\n";
    }
  }
  return kExitPass;
}

int cmd_search(const std::string& profile_name, const std::string& algorithm,
               const std::string& props_spec, int workers, int seed_depth,
               bool unbounded, long long node_limit, const std::string& output_dir,
               bool quiet, const std::string& command_line) {
  const auto start = std::chrono::steady_clock::now();
  const rp::RootSystemProfile profile = rp::profile_for(profile_name);
  rp::SearchOptions opts;
  opts.filters = parse_property_list(props_spec.empty() ? "1-5" : props_spec);
  opts.workers = workers;
  opts.seed_prefix_depth = seed_depth;
  opts.node_limit = node_limit;
  if (!quiet)
    opts.progress = [](const std::string& msg) { std::cerr << msg << "\n"; };

  rp::SearchResult result;
  if (algorithm == "v1") {
    if (profile.type_name != "H4")
      throw usage_error("algorithm v1 is specific to profile H4");
    if (!unbounded && node_limit < 0)
      throw usage_error(
          "the full v1 run takes days; pass --unbounded to confirm, or set "
          "--node-limit");
    const rp::PartialPoset skeleton = rp::h4_skeleton();
    const auto records = rp::enumerate_upper_parts(skeleton);
    result = rp::search_v1(skeleton, records, profile, opts);
  } else if (algorithm == "v2") {
    result = rp::search_v2(profile, opts);
  } else {
    throw usage_error("unknown algorithm: " + algorithm);
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  json outputs = json::array();
  if (!output_dir.empty()) {
    fs::create_directories(output_dir);
    for (size_t i = 0; i < result.posets.size(); ++i) {
      std::ostringstream name;
      name << "poset_" << std::setw(3) << std::setfill('0') << i << ".poset";
      rp::write_poset_file(result.posets[i], (fs::path(output_dir) / name.str()).string());
      outputs.push_back(name.str());
    }
    json manifest;
    manifest["command_line"] = command_line;
    manifest["profile"] = profile.type_name;
    manifest["algorithm"] = algorithm;
    manifest["properties"] = property_names(opts.filters);
    manifest["workers"] = workers;
    manifest["seed_prefix_depth"] = seed_depth;
    manifest["result_count"] = result.posets.size();
    manifest["nodes"] = result.nodes;
    manifest["leaves"] = result.leaves;
    manifest["units"] = result.units;
    manifest["complete"] = result.complete;
    manifest["wall_time_seconds"] = wall;
    manifest["outputs"] = outputs;
    std::ofstream mf(fs::path(output_dir) / "manifest.json");
    mf << manifest.dump(2) << "\n";
  } else {
    for (const auto& p : result.posets) std::cout << rp::to_text(p) << "\n";
  }
  std::cout << "found " << result.posets.size() << " posets\n"
            << "nodes " << result.nodes << "\n"
            << "leaves " << result.leaves << "\n"
            << "units " << result.units << "\n"
            << "complete " << (result.complete ? "true" : "false") << "\n";
  return result.complete ? kExitPass : kExitFail;
}

int cmd_qt(const std::string& sub) {
  if (sub == "decompose") {
    const rp::UnivariatePolynomial product = rp::h4_product_formula();
    const auto parts = rp::decompose_q2_brackets(product);
    for (const auto& [shift, length] : parts)
      std::cout << "shift " << shift << " length " << length << "\n";
    std::cout << "summands " << parts.size() << "\n";
    return kExitPass;
  }
  if (sub == "candidates") {
    const auto candidates = rp::enumerate_hilbert_candidates();
    for (size_t i = 0; i < candidates.size(); ++i) {
      std::cout << i << ": " << candidates[i].bracket_notation() << " | t=1 "
                << rp::eval_t1(candidates[i].expand()).to_string() << "\n";
    }
    std::cout << "candidates " << candidates.size() << "\n";
    return kExitPass;
  }
  if (sub == "check-conjecture") {
    const rp::BivariatePolynomial conj = rp::conjecture_h4_polynomial();
    const rp::UnivariatePolynomial shifted = rp::eval_t_qinv_shift(conj, 60);
    const rp::UnivariatePolynomial product = rp::h4_product_formula();
    const bool ok = shifted == product;
    std::cout << "q^60 Cat(1/q, q) == [32][42][50][60]/([2][12][20][30]): "
              << (ok ? "pass" : "fail") << "\n";
    const auto parts = rp::decompose_q2_brackets(product);
    std::ostringstream lengths;
    for (size_t i = 0; i < parts.size(); ++i)
      lengths << (i ? "," : "") << parts[i].second;
    std::cout << "bracket lengths " << lengths.str() << "\n";
    return ok ? kExitPass : kExitFail;
  }
  throw usage_error("unknown qt subcommand: " + sub);
}

int cmd_h3_from_d6(const std::string& output_file) {
  const rp::H3Construction c = rp::build_h3_construction();
  std::cout << c.trace();
  if (!output_file.empty()) rp::write_poset_file(c.poset, output_file);
  const rp::GradedPoset reference = rp::reference_poset("H3");
  const bool ok = rp::is_isomorphic(c.poset, reference);
  std::cout << "isomorphic to bundled H3 " << (ok ? "true" : "false") << "\n";
  return ok ? kExitPass : kExitFail;
}

int cmd_configs(int lower, int upper) {
  const auto configs = rp::rank_configurations(lower, upper);
  for (const auto& c : configs) {
    std::cout << "config";
    for (rp::Mask m : c.upper_covers) {
      std::cout << " {";
      bool first = true;
      for (int v = 1; v <= lower; ++v)
        if (m & rp::bit(v)) {
          std::cout << (first ? "" : ",") << v;
          first = false;
        }
      std::cout << "}";
    }
    std::cout << "\n";
  }
  std::cout << "configurations " << configs.size() << "\n";
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"root poset enumeration and verification for noncrystallographic types"};
  app.require_subcommand(1);
  const std::string command_line = join_args(argc, argv);

  std::string poset_file, profile_name, props_spec, output_path, algorithm = "v2";
  std::string qt_sub;
  int workers = 1, seed_depth = -1, lower = 0, upper = 0;
  bool unbounded = false, quiet = false;
  long long node_limit = -1;

  auto* verify = app.add_subcommand("verify", "check a poset file against a profile");
  verify->add_option("poset", poset_file, "poset file")->required();
  verify->add_option("--profile", profile_name, "profile name")->required();
  verify->add_option("--properties", props_spec, "property selection, e.g. 1-4,5a");

  auto* search = app.add_subcommand("search", "enumerate candidate root posets");
  search->add_option("--profile", profile_name, "profile name")->required();
  search->add_option("--algorithm", algorithm, "v1 or v2");
  search->add_option("--properties", props_spec, "property filter set");
  search->add_option("--workers", workers, "worker threads");
  search->add_option("--seed-prefix-depth", seed_depth, "work unit split depth");
  search->add_option("--node-limit", node_limit, "abort after this many nodes");
  search->add_option("--output", output_path, "output directory");
  search->add_flag("--unbounded", unbounded, "allow multi-day runs");
  search->add_flag("--quiet", quiet, "suppress progress lines");

  auto* orbits = app.add_subcommand("orbits", "Panyushev orbit decomposition");
  orbits->add_option("poset", poset_file, "poset file")->required();

  auto* qt = app.add_subcommand("qt", "q,t-Catalan computations");
  qt->add_option("subcommand", qt_sub, "decompose | candidates | check-conjecture")
      ->required();

  auto* h3d6 = app.add_subcommand("h3-from-d6", "restrict the D6 root poset to H3");
  h3d6->add_option("--output", output_path, "write the constructed poset here");

  auto* configs = app.add_subcommand("configs", "rank configurations between two ranks");
  configs->add_option("lower", lower, "lower rank size")->required();
  configs->add_option("upper", upper, "upper rank size")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Keep the documented exit contract: help is a success, any other parse
    // problem is a usage error.
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (app.got_subcommand(verify))
      return cmd_verify(poset_file, profile_name, props_spec);
    if (app.got_subcommand(search))
      return cmd_search(profile_name, algorithm, props_spec, workers, seed_depth,
                        unbounded, node_limit, output_path, quiet, command_line);
    if (app.got_subcommand(orbits)) return cmd_orbits(poset_file);
    if (app.got_subcommand(qt)) return cmd_qt(qt_sub);
    if (app.got_subcommand(h3d6)) return cmd_h3_from_d6(output_path);
    if (app.got_subcommand(configs)) return cmd_configs(lower, upper);
  } catch (const usage_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const rp::profile_error& e) {
    std::cerr << "profile error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const rp::invariant_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}
