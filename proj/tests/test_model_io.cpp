#include <doctest.h>

#include <filesystem>
#include <random>

#include <grr/model_io.hpp>

using namespace grr;

namespace {

std::string data(const char* name) { return std::string(GRR_DATA_DIR) + "/" + name; }

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

template <typename T, typename Read>
T through_file(const T& value, Read read, const char* name) {
  auto path = temp_path(name);
  write_json_file(path, to_json(value));
  T back = read(read_json_file(path));
  std::filesystem::remove(path);
  return back;
}

}  // namespace

TEST_CASE("shipped models load and validate") {
  for (const char* f : {"torus_O.json", "torus_deg2.json", "two_spheres.json"}) {
    auto m = model_from_json(read_json_file(data(f)));
    CHECK(validate(m).ok());
  }
  auto bad = model_from_json(read_json_file(data("torus_bad_allowance.json")));
  CHECK(validate(bad).has(Issue::BadAllowance));
  CHECK(degree(model_from_json(read_json_file(data("torus_deg2.json")))) == 3);
}

TEST_CASE("models round-trip exactly") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int t = 0; t < 20; ++t) {
    GluingModel m;
    m.pieces = {{Disk(cplx(u(rng), u(rng)), std::abs(u(rng)) + 0.01),
                 Disk(cplx(u(rng), u(rng)), std::abs(u(rng)) + 0.01, Side::exterior)},
                {Disk(cplx(u(rng), u(rng)), 0.1 + std::abs(u(rng)))}};
    Psi psi = t % 2 ? Psi(PsiWinding{cplx(u(rng), u(rng)), t - 10}) : Psi(PsiConst{cplx(u(rng), u(rng))});
    // stored maps are read back raw, so arbitrary coefficients must survive unchanged
    Moebius phi = Moebius::raw(cplx(u(rng), u(rng)), cplx(u(rng), u(rng)), cplx(u(rng), u(rng)), cplx(u(rng), u(rng)));
    m.pairs = {{0, 2, phi, psi, t % 3 + 1}, {1, 1, Moebius(), PsiConst{}, 1}};
    CHECK(model_from_json(Json::parse(to_json(m).dump())) == m);
  }
  auto torus = model_from_json(read_json_file(data("torus_deg2.json")));
  CHECK(through_file(torus, model_from_json, "grr_model_rt.json") == torus);
}

TEST_CASE("reports round-trip, including infinite gaps") {
  auto m = model_from_json(read_json_file(data("torus_O.json")));
  auto rep = rr_verdict(m, {8, 16});
  auto back = through_file(rep, report_from_json, "grr_report_rt.json");
  CHECK(back == rep);
  rep.gap_ratio = std::numeric_limits<double>::infinity();
  rep.truncations[0].gap_ratio = std::numeric_limits<double>::infinity();
  auto j = to_json(rep);
  CHECK(j.at("gap_ratio").is_null());
  CHECK(report_from_json(Json::parse(j.dump())) == rep);
}

TEST_CASE("foam states and dust specs round-trip") {
  auto dust = dust_from_json(read_json_file(data("dust_two_point.json")));
  CHECK(dust_from_json(to_json(dust)) == dust);
  auto st = build_foam(dust, 20, 12);
  CHECK(through_file(st, foam_from_json, "grr_foam_rt.json") == st);
  auto j = to_json(st);
  CHECK(j.at("pairs").size() == 10);
  CHECK(j.contains("provenance"));
  // the model part is readable as a plain model
  CHECK(model_from_json(j) == foam_to_model(st));

  // larger foams keep their disks but carry no pairing
  auto big = build_foam(dust, 60, 12);
  auto jb = to_json(big);
  CHECK(jb.at("pairs").empty());
  CHECK(jb.at("provenance").at("pairing").get<std::string>().rfind("none", 0) == 0);
  CHECK(foam_from_json(Json::parse(jb.dump())) == big);

  auto dense = dust_from_json(read_json_file(data("dust_rational.json")));
  CHECK(dense.sequence == SequenceKind::RationalGrid);
  auto st2 = build_foam(dense, 11, 0);
  CHECK(foam_from_json(Json::parse(to_json(st2).dump())) == st2);
}

TEST_CASE("schema errors") {
  auto expect_invalid = [](const char* text) {
    try {
      model_from_json(Json::parse(text));
      FAIL("expected InvalidModel for " << text);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::InvalidModel);
    }
  };
  expect_invalid(R"({"pieces": 3, "pairs": []})");
  expect_invalid(R"({"pieces": [[{"center": [0], "radius": 1}]], "pairs": []})");
  expect_invalid(R"({"pieces": [[{"center": [0, 0], "radius": -1}]], "pairs": []})");
  expect_invalid(R"({"pieces": [[{"center": [0, 0], "radius": 1, "side": "up"}]], "pairs": []})");
  expect_invalid(R"({"pieces": [], "pairs": [{"j": 0, "j2": 1, "phi": [[1, 0]], "psi": {"const": [1, 0]}, "allowance_dim": 1}]})");
  expect_invalid(R"({"pieces": [], "pairs": [{"j": 0, "j2": 1, "phi": [[1,0],[0,0],[0,0],[1,0]], "psi": {"other": 1}, "allowance_dim": 1}]})");
  expect_invalid(R"({"pieces": [], "pairs": [{"j": 0, "j2": 1, "phi": [[0,0],[0,0],[0,0],[0,0]], "psi": {"const": [1, 0]}, "allowance_dim": 1}]})");
  try {
    read_json_file(temp_path("grr_does_not_exist.json"));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BadParameters);
  }
}
