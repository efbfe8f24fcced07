// Command-line front end: distance, bar-norm, spectrum, foam-build, rr-check, fredholm-lab.
// Exit codes: 0 success/PASS, 2 FAIL, 3 UNRESOLVED, 1 usage or validation error.

#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include <grr/bar_projector.hpp>
#include <grr/foam.hpp>
#include <grr/gluing.hpp>
#include <grr/model_io.hpp>
#include <grr/riemann_roch.hpp>

using namespace grr;

namespace {

constexpr int kExitOk = 0, kExitUsage = 1, kExitFail = 2, kExitUnresolved = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "cx,cy,r" or "cx,cy,r,ext"
Disk parse_disk(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');) parts.push_back(tok);
  if (parts.size() < 3 || parts.size() > 4) throw UsageError("disk must be cx,cy,r[,ext]: " + s);
  Side side = Side::interior;
  if (parts.size() == 4) {
    if (parts[3] == "ext" || parts[3] == "exterior") side = Side::exterior;
    else if (parts[3] != "int" && parts[3] != "interior") throw UsageError("disk side must be int or ext: " + s);
  }
  try {
    return Disk(cplx(std::stod(parts[0]), std::stod(parts[1])), std::stod(parts[2]), side);
  } catch (const std::invalid_argument&) {
    throw UsageError("disk coordinates must be numbers: " + s);
  }
}

std::vector<int> parse_modes(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');) {
    int n = 0;
    try {
      n = std::stoi(tok);
    } catch (const std::exception&) {
      throw UsageError("modes must be a comma-separated list of integers: " + s);
    }
    if (n < 1) throw UsageError("mode counts must be positive");
    out.push_back(n);
  }
  if (out.empty()) throw UsageError("no mode counts given");
  return out;
}

void print_real(const char* label, double x) { std::printf("%s %.15g\n", label, x); }

int exit_for(Verdict v) {
  return v == Verdict::Pass ? kExitOk : v == Verdict::Fail ? kExitFail : kExitUnresolved;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Riemann-Roch numerics for Schottky-type gluings of spheres"};
  app.require_subcommand(1);

  std::string d1, d2, model_path, out_path, dust_path, modes = "16,32", pairing = "consecutive";
  int n_modes = 32, count = 0, trials = 100, n1 = 5, n2 = 5, limit = -1;
  std::uint64_t seed = 0;
  double gap = kDefaultGapThreshold;

  auto* distance = app.add_subcommand("distance", "conformal distance between two disks");
  distance->add_option("--d1", d1, "first disk cx,cy,r[,ext]")->required();
  distance->add_option("--d2", d2, "second disk")->required();

  auto* barnorm = app.add_subcommand("bar-norm", "bar-projector block norm next to e^{-lambda}");
  barnorm->add_option("--d1", d1, "source disk")->required();
  barnorm->add_option("--d2", d2, "target disk")->required();
  barnorm->add_option("--modes", n_modes, "modes per circle")->check(CLI::PositiveNumber);

  auto* spectrum = app.add_subcommand("spectrum", "singular values of a bar block, or of the mismatch operator");
  auto* sd1 = spectrum->add_option("--d1", d1, "source disk");
  auto* sd2 = spectrum->add_option("--d2", d2, "target disk");
  auto* smodel = spectrum->add_option("--model", model_path, "model JSON");
  sd1->needs(sd2);
  sd2->needs(sd1);
  smodel->excludes(sd1);
  smodel->excludes(sd2);
  spectrum->add_option("--modes", n_modes, "modes per circle")->check(CLI::PositiveNumber);

  auto* foam = app.add_subcommand("foam-build", "greedy foam construction");
  foam->add_option("--dust", dust_path, "dust spec JSON")->required();
  foam->add_option("--count", count, "number of disks")->required()->check(CLI::PositiveNumber);
  foam->add_option("--seed", seed, "seed (spiral phase, random pairing)");
  foam->add_option("--pairing", pairing, "consecutive | random")->check(CLI::IsMember({"consecutive", "random"}));
  foam->add_option("--out", out_path, "output foam/model JSON");

  auto* rr = app.add_subcommand("rr-check", "index of the mismatch operator against the degree");
  rr->add_option("--model", model_path, "model JSON")->required();
  rr->add_option("--modes", modes, "comma-separated truncations");
  rr->add_option("--gap", gap, "spectral gap threshold")->check(CLI::PositiveNumber);
  rr->add_option("--limit", limit, "use only the first K disks of a foam file (K even)");
  rr->add_option("--out", out_path, "report JSON");

  auto* lab = app.add_subcommand("fredholm-lab", "randomized excess checks for comparable graph subspaces");
  lab->add_option("--trials", trials, "trials per (d1, d2)")->check(CLI::PositiveNumber);
  lab->add_option("--seed", seed, "base seed");
  lab->add_option("--n1", n1, "dimension of H1")->check(CLI::Range(2, 200));
  lab->add_option("--n2", n2, "dimension of H2")->check(CLI::Range(2, 200));
  lab->add_option("--out", out_path, "results JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*distance) {
      Disk a = parse_disk(d1), b = parse_disk(d2);
      print_real("lambda", conformal_distance(a, b));
      return kExitOk;
    }
    if (*barnorm) {
      Disk a = parse_disk(d1), b = parse_disk(d2);
      double lambda = conformal_distance(a, b);
      double s = bar_norm(a, b, n_modes);
      print_real("sigma1", s);
      print_real("exp_minus_lambda", std::exp(-lambda));
      std::printf("ratio %.6f\n", s * std::exp(lambda));
      return kExitOk;
    }
    if (*spectrum) {
      Eigen::VectorXd sv;
      if (!model_path.empty()) {
        GluingModel m = model_from_json(read_json_file(model_path));
        sv = singular_values(assemble_mismatch(m, n_modes).mu);
      } else if (!d1.empty()) {
        sv = bar_singular_values(parse_disk(d1), parse_disk(d2), n_modes);
      } else {
        throw UsageError("spectrum needs --d1/--d2 or --model");
      }
      for (int i = 0; i < sv.size(); ++i) std::printf("%d %.17g\n", i + 1, sv(i));
      return kExitOk;
    }
    if (*foam) {
      DustSpec dust = dust_from_json(read_json_file(dust_path));
      FoamState st = build_foam(dust, count, seed);
      auto issues = verify_foam(st, std::min(count, 200));
      for (const auto& v : issues) std::cerr << to_string(v.kind) << ": " << v.message << "\n";
      double total = 0;
      for (double s : st.sums) total += s;
      std::printf("disks %zu\n", st.disks.size());
      print_real("hs_sum", total);
      std::printf("violations %zu\n", issues.size());
      if (!out_path.empty()) {
        Json j = to_json(st);
        if (pairing == "random" && count % 2 == 0 && !j["pairs"].empty()) {
          Json m = to_json(foam_to_model(st, Pairing::Random, seed));
          j["pairs"] = m["pairs"];
          j["provenance"]["pairing"] = "random";
        }
        write_json_file(out_path, j);
      }
      return issues.empty() ? kExitOk : kExitFail;
    }
    if (*rr) {
      std::vector<int> ns = parse_modes(modes);
      Json j = read_json_file(model_path);
      GluingModel m;
      if (limit >= 0) {
        FoamState st = foam_from_json(j);
        m = foam_to_model(st, Pairing::Consecutive, 0, limit);
      } else {
        m = model_from_json(j);
      }
      Diagnostics diag = validate(m);
      for (const auto& v : diag.items)
        std::cerr << (v.warning ? "warning " : "invalid ") << to_string(v.kind) << ": " << v.message << "\n";
      if (!diag.ok()) return kExitUsage;
      RRReport rep = rr_verdict(m, ns, gap);
      for (const auto& t : rep.truncations)
        std::printf("N %d h0 %d h1 %d gap %.3g rc_tail %.3g%s\n", t.N, t.h0, t.h1, t.gap_ratio, t.rc_tail,
                    t.resolved ? "" : " unresolved");
      std::printf("degree %d\n", rep.degree);
      std::printf("index %d\n", rep.index);
      std::printf("verdict %s\n", to_string(rep.verdict));
      if (!rep.note.empty()) std::printf("note %s\n", rep.note.c_str());
      if (!out_path.empty()) write_json_file(out_path, to_json(rep));
      return exit_for(rep.verdict);
    }
    if (*lab) {
      Json results = Json::array();
      int failures = 0;
      for (int a = -1; a <= 2; ++a)
        for (int b = -1; b <= 2; ++b) {
          int pass = 0;
          for (int t = 0; t < trials; ++t) {
            LabTrial r = fredholm_lab_trial(n1, n2, a, b, seed + std::uint64_t(t));
            pass += r.pass;
          }
          failures += trials - pass;
          std::printf("d1 %d d2 %d pass %d/%d\n", a, b, pass, trials);
          results.push_back({{"d1", a}, {"d2", b}, {"trials", trials}, {"pass", pass}});
        }
      if (!out_path.empty())
        write_json_file(out_path, {{"seed", seed}, {"n1", n1}, {"n2", n2}, {"results", results}});
      std::printf("verdict %s\n", failures == 0 ? "PASS" : "FAIL");
      return failures == 0 ? kExitOk : kExitFail;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << to_string(e.kind()) << ": " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
