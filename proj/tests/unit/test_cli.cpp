#include <doctest.h>

#include <sstream>

#include <theta/json_io.hpp>
#include <theta_tools/commands.hpp>
#include <theta_tools/instance.hpp>
#include <theta_tools/suites.hpp>

#include "test_util.hpp"

using namespace theta;
using namespace theta::tools;
using json_io::Json;
using namespace std::complex_literals;

namespace {

std::string data(const std::string& name) { return std::string(THETA_TEST_DATA_DIR) + "/" + name; }

struct Run {
  int code = -1;
  std::string out, err;
  Json json() const { return Json::parse(out); }
};

template <typename Cmd>
Run run(Cmd cmd, CommandOptions opts) {
  std::ostringstream out, err;
  Run r;
  r.code = cmd(opts, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

CommandOptions with_instance(const std::string& name) {
  CommandOptions o;
  o.instance_path = data(name);
  return o;
}

}  // namespace

TEST_SUITE("json_io") {
  TEST_CASE("complex values and matrices round trip") {
    CHECK(json_io::to_json(Complex(1.5, -2.0)).dump() == R"({"re":1.5,"im":-2.0})");
    ComplexMatrix m(2, 2);
    m << 1.0 + 2i, 0.5, 0.5, -1i;
    CHECK(json_io::complex_matrix_from(json_io::to_json(m)) == m);
    CHECK(json_io::complex_from(Json::parse("[0.25, 3]")) == Complex(0.25, 3.0));
    CHECK(json_io::complex_from(Json::parse("7")) == Complex(7.0, 0.0));
    CHECK_THROWS_WITH_CODE(json_io::complex_from(Json::parse(R"({"re": 1})")), ErrorCode::InvalidInput);
    CHECK_THROWS_WITH_CODE(json_io::complex_matrix_from(Json::parse("[[1, 2], [3]]")), ErrorCode::InvalidInput);
  }

  TEST_CASE("bases, group elements and chains") {
    const SplitBasis b{(IntMatrix(2, 2) << 0, 1, 1, 0).finished(), (IntMatrix(2, 2) << 0, 1, 1, 0).finished(), 1};
    const Json jb = json_io::to_json(b);
    CHECK(jb["n"] == 2);
    CHECK(jb["k"] == 1);
    const SplitBasis back = json_io::split_basis_from(jb);
    CHECK(back.N == b.N);
    CHECK(back.M == b.M);

    const ModularElement g = ModularElement::inversion(2);
    CHECK(json_io::modular_element_from(json_io::to_json(g)) == g);

    KoszulChain c(4, 2);
    c.add({0, 3}, GroupRingElement::generator_power(4, 1, -2) + GroupRingElement::one(4));
    c.add({1, 2}, GroupRingElement::monomial({0, 0, 0, 0}, BigInt("123456789012345678901234567890")));
    const Json jc = json_io::to_json(c);
    CHECK(jc["degree"] == 2);
    CHECK(jc["components"][0]["subset"] == Json::parse("[1, 4]"));
    CHECK(json_io::koszul_chain_from(jc, 4) == c);
  }

  TEST_CASE("reports") {
    Report r{"demo", {}, 1.25};
    r.add("close", 1e-12, 1e-8);
    r.add_exact("exact", true);
    const Json j = json_io::to_json(r);
    CHECK(j["pass"] == true);
    CHECK(j["checks"][1]["exact"] == true);
    CHECK_FALSE(j.contains("seconds"));
    CHECK(json_io::dump(j).back() == '\n');
  }
}

TEST_SUITE("cli") {
  TEST_CASE("instances") {
    const ProblemInstance inst = load_instance(data("indefinite.json"));
    CHECK(inst.n == 2);
    CHECK(inst.k == 1);
    CHECK(inst.seed == 32378u);
    CHECK_NOTHROW(validate(inst));
    CHECK_THROWS_WITH_CODE(validate(load_instance(data("malformed_omega.json"))), ErrorCode::InvalidInput);
    CHECK_THROWS_WITH_CODE(load_instance(data("not_json.json")), ErrorCode::InvalidInput);
    CHECK_THROWS_WITH_CODE(load_instance(data("missing.json")), ErrorCode::InvalidInput);

    const ComplexVector z = parse_z("0.5,-1;2");
    REQUIRE(z.size() == 2);
    CHECK(z(0) == Complex(0.5, -1.0));
    CHECK(z(1) == Complex(2.0, 0.0));
    CHECK_THROWS_WITH_CODE(parse_z("a,b"), ErrorCode::InvalidInput);
  }

  TEST_CASE("eval") {
    const Run classical = run(cmd_eval, with_instance("classical.json"));
    REQUIRE(classical.code == kExitOk);
    const Json j = classical.json();
    CHECK(std::abs(j["value"]["re"].get<double>() - 1.086434811213308) < 1e-12);
    CHECK(j["value"]["im"].get<double>() == doctest::Approx(0.0));
    CHECK(j["tail"].get<double>() <= 1e-12);

    const Run trivial = run(cmd_eval, with_instance("empty_cone.json"));
    REQUIRE(trivial.code == kExitOk);
    CHECK(trivial.json()["value"]["re"] == 1.0);
    CHECK(trivial.json()["tail"] == 0.0);

    CommandOptions shifted = with_instance("characteristic.json");
    const Run half = run(cmd_eval, shifted);
    REQUIRE(half.code == kExitOk);
    double brute = 0.0;
    for (int m = -10; m <= 10; ++m) brute += std::exp(-kPi * (m + 0.5) * (m + 0.5));
    CHECK(std::abs(half.json()["value"]["re"].get<double>() - brute) < 1e-10);

    CommandOptions at_z = with_instance("classical.json");
    at_z.z = "0.5,0";
    const Run zero = run(cmd_eval, at_z);
    REQUIRE(zero.code == kExitOk);
    // theta(1/2, i) = sum (-1)^m e^{-pi m^2}
    double alt = 0.0;
    for (int m = -10; m <= 10; ++m) alt += (m % 2 == 0 ? 1.0 : -1.0) * std::exp(-kPi * m * m);
    CHECK(std::abs(zero.json()["value"]["re"].get<double>() - alt) < 1e-10);
  }

  TEST_CASE("eval exit codes") {
    const Run bad = run(cmd_eval, with_instance("malformed_omega.json"));
    CHECK(bad.code == kExitValidation);
    CHECK(bad.err.find("InvalidInput") != std::string::npos);
    CHECK(run(cmd_eval, with_instance("tight_radius.json")).code == kExitRadiusOverflow);
    CHECK(run(cmd_eval, CommandOptions{}).code == kExitValidation);
    CommandOptions wrong_z = with_instance("classical.json");
    wrong_z.z = "1;2";
    CHECK(run(cmd_eval, wrong_z).code == kExitValidation);
  }

  TEST_CASE("split basis") {
    const Run swap = run(cmd_split_basis, with_instance("split_swap.json"));
    REQUIRE(swap.code == kExitOk);
    CHECK(swap.json()["N"] == Json::parse("[[0, 1], [1, 0]]"));
    const Run id = run(cmd_split_basis, with_instance("split_definite.json"));
    REQUIRE(id.code == kExitOk);
    CHECK(id.json()["N"] == Json::parse("[[1, 0], [0, 1]]"));
    CommandOptions empty = with_instance("split_swap.json");
    empty.bound = 0;
    CHECK(run(cmd_split_basis, empty).code == kExitNotFound);
    CHECK(run(cmd_split_basis, with_instance("split_hyperbolic.json")).code == kExitNotFound);
  }

  TEST_CASE("transform") {
    const Run id = run(cmd_transform, with_instance("transform_identity.json"));
    REQUIRE(id.code == kExitOk);
    const Json jid = id.json();
    CHECK(jid["zeta"]["re"] == 1.0);
    CHECK(jid["omega_g"][0][0]["im"] == -1.0);

    const Run tr = run(cmd_transform, with_instance("transform_translation.json"));
    REQUIRE(tr.code == kExitOk);
    const ComplexMatrix og = json_io::complex_matrix_from(tr.json()["omega_g"]);
    CHECK(std::abs(og(0, 0) - (0.21 - 2.0 - 1.0i)) < 1e-15);
    CHECK(std::abs(og(0, 1) - (0.33 - 1.0 + 0.17i)) < 1e-15);
    CHECK(std::abs(og(1, 1) - (-0.12 + 2.0 + 1.4i)) < 1e-15);
    CHECK(tr.json()["zeta"]["re"].get<double>() == doctest::Approx(1.0));

    const Run inv = run(cmd_transform, with_instance("transform_inversion.json"));
    REQUIRE(inv.code == kExitOk);
    CHECK(std::abs(json_io::complex_from(inv.json()["omega_g"][0][0]) - 1i) < 1e-15);

    const Run lower = run(cmd_transform, with_instance("transform_inversion_lower.json"));
    REQUIRE(lower.code == kExitOk);
    const Complex zeta = json_io::complex_from(lower.json()["zeta"]);
    CHECK(std::abs(std::pow(zeta, 8) - 1.0) < 1e-8);
    CHECK(lower.json()["residuals"]["case3_max"].get<double>() < 1e-8);
  }

  TEST_CASE("verify") {
    CommandOptions heat = with_instance("classical.json");
    heat.suite = "heat";
    const Run r = run(cmd_verify, heat);
    CHECK(r.code == kExitOk);
    CHECK(r.json()["suite"] == "heat");

    CommandOptions koszul;
    koszul.suite = "koszul";
    CHECK(run(cmd_verify, koszul).code == kExitOk);

    CommandOptions unknown;
    unknown.suite = "nope";
    CHECK(run(cmd_verify, unknown).code == kExitValidation);
  }

  TEST_CASE("reports are reproducible") {
    CommandOptions o = with_instance("indefinite.json");
    o.suite = "cocycle";
    const Run a = run(cmd_verify, o);
    const Run b = run(cmd_verify, o);
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
  }

  TEST_CASE("every suite passes") {
    for (const auto& name : suite_names()) {
      const Report r = run_suite(name);
      CHECK_MESSAGE(r.pass(), name);
    }
  }
}
