#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "wigmod/cli.hpp"
#include "wigmod/instance.hpp"
#include "wigmod/selftest.hpp"

using namespace wigmod;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / "wigmod-test";
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

struct CliRun {
  int rc;
  std::string out;
  std::string err;
};

CliRun run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int rc = cli_main(args, out, err);
  return {rc, out.str(), err.str()};
}

}  // namespace

TEST_CASE("matrix serialization round trip") {
  Rng rng(101);
  const CMatrix m = CMatrix::gaussian(3, 2, rng);
  const CMatrix back = cmatrix_from_json(to_json(m));
  CHECK(dist_fro(m, back) == 0.0);
  CHECK(to_json(m).dump() == to_json(back).dump());

  const ModVec v{{3, 2}, m};
  const ModVec vb = modvec_from_json(to_json(v));
  CHECK(vb.space.d == 3);
  CHECK(dist_fro(vb.mat, m) == 0.0);

  const ALinOp op{{3, 2}, CMatrix::gaussian(2, 2, rng)};
  const ALinOp ob = alinop_from_json(to_json(op));
  CHECK(dist_fro(ob.rf, op.rf) == 0.0);

  const RMatrix r = RMatrix::gaussian(2, 2, rng);
  CHECK((rmatrix_from_json(to_json(r)) - r).fro_norm() == 0.0);
}

TEST_CASE("gen_instance determinism and JSON round trip") {
  InstanceSpec spec;
  spec.kind = InstanceKind::module_unitary;
  spec.d = 2;
  spec.m = 3;
  spec.seed = 111;
  const Instance a = gen_instance(spec);
  const Instance b = gen_instance(spec);
  CHECK(a.to_json().dump() == b.to_json().dump());

  const Instance c = Instance::from_json(a.to_json());
  CHECK(c.to_json().dump() == a.to_json().dump());

  // a reloaded oracle evaluates identically
  Rng rng(112);
  const ModVec f = ModVec::gaussian({2, 3}, rng);
  CHECK(dist_fro(a.module_oracle().eval(f).mat, c.module_oracle().eval(f).mat) ==
        0.0);
}

TEST_CASE("gen_instance validates kind constraints") {
  InstanceSpec anti;
  anti.kind = InstanceKind::module_antiunitary;
  anti.d = 2;
  anti.m = 3;
  CHECK_THROWS_AS(gen_instance(anti), Error);
  try {
    gen_instance(anti);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::invalid_spec);
  }

  InstanceSpec bad;
  bad.kind = InstanceKind::module_unitary;
  bad.d = 0;
  CHECK_THROWS_AS(gen_instance(bad), Error);

  InstanceSpec noeps;
  noeps.kind = InstanceKind::cstar;
  noeps.d = 2;
  noeps.corruption = Corruption{0.0, std::nullopt, {}, {}};
  CHECK_THROWS_AS(gen_instance(noeps), Error);
}

TEST_CASE("every generated valid instance passes its verifier") {
  for (auto kind : {InstanceKind::module_unitary,
                    InstanceKind::module_antiunitary, InstanceKind::cstar,
                    InstanceKind::real}) {
    InstanceSpec spec;
    spec.kind = kind;
    spec.d = kind == InstanceKind::module_antiunitary ? 1 : 2;
    spec.m = 3;
    spec.n = 4;
    spec.seed = 113;
    const Instance inst = gen_instance(spec);
    switch (kind) {
      case InstanceKind::module_unitary:
      case InstanceKind::module_antiunitary:
        CHECK(verify_instance(inst.module_oracle(), inst.module_samples(8),
                              1e-9)
                  .pass);
        break;
      case InstanceKind::cstar:
        CHECK(cstar_verify(inst.cstar_oracle(), inst.cstar_samples(8), 1e-9)
                  .pass);
        break;
      case InstanceKind::real:
        CHECK(real_verify(inst.real_oracle(), inst.real_samples(8), 1e-10)
                  .pass);
        break;
    }
  }
}

TEST_CASE("phase functions are unit modulus and deterministic") {
  InstanceSpec spec;
  spec.kind = InstanceKind::module_unitary;
  spec.d = 2;
  spec.m = 3;
  spec.seed = 114;
  const Instance inst = gen_instance(spec);
  Rng rng(115);
  for (int k = 0; k < 20; ++k) {
    const ModVec f = ModVec::gaussian({2, 3}, rng);
    const cplx p = inst.true_module_phase(f);
    CHECK(std::abs(std::abs(p) - 1.0) <= 1e-15);
    CHECK(inst.true_module_phase(f) == p);
  }
  // cstar phase is pinned to 1 at the identity
  InstanceSpec cs;
  cs.kind = InstanceKind::cstar;
  cs.d = 3;
  cs.seed = 116;
  const Instance ci = gen_instance(cs);
  CHECK(std::abs(ci.true_cstar_phase(CMatrix::identity(3)) - cplx(1.0, 0.0)) <=
        1e-15);
}

TEST_CASE("cli gen/verify/factorize round trip") {
  TempDir tmp;
  const std::string inst = tmp.file("i.json");
  const std::string fact = tmp.file("f.json");

  CliRun gen = run_cli({"gen", "--kind", "module-unitary", "--d", "2", "--m",
                        "3", "--seed", "1", "--out", inst});
  CHECK(gen.rc == 0);
  CHECK(fs::exists(inst));

  CliRun ver = run_cli({"verify", "--in", inst});
  CHECK(ver.rc == 0);

  CliRun fac = run_cli({"factorize", "--in", inst, "--samples", "32", "--out",
                        fact, "--json"});
  CHECK(fac.rc == 0);
  CHECK(fs::exists(fact));
  CHECK(fs::exists(tmp.file("f.report.json")));
  const json rep = json::parse(fac.out);
  CHECK(rep.at("verdict").get<std::string>() == "pass");
  CHECK(rep.at("residuals").at("reconstruction").at("value").get<double>() <=
        1e-8);

  // factorization file matches the pinned schema
  const json fj = json::parse(read_text_file(fact));
  CHECK(fj.contains("parity"));
  CHECK(fj.contains("conjugate_linear"));
  CHECK(fj.contains("W"));
  CHECK(fj.contains("phases"));
  CHECK(fj.contains("residuals"));

  // report renders the saved run report
  const std::string repfile = tmp.file("r.json");
  write_text_file(repfile, rep.dump(2) + "\n");
  CliRun rp = run_cli({"report", "--in", repfile});
  CHECK(rp.rc == 0);
  CHECK(rp.out.find("verdict") != std::string::npos);
}

TEST_CASE("kind names parse with and without the corrupted prefix") {
  bool corrupted = false;
  CHECK(kind_from_name("module-unitary", corrupted) ==
        InstanceKind::module_unitary);
  CHECK_FALSE(corrupted);
  CHECK(kind_from_name("corrupted-module", corrupted) ==
        InstanceKind::module_unitary);
  CHECK(corrupted);
  CHECK(kind_from_name("corrupted-real", corrupted) == InstanceKind::real);
  CHECK(corrupted);
  CHECK_THROWS_AS(kind_from_name("corrupted-", corrupted), Error);
}

TEST_CASE("cli rejects corrupted instances with exit code 1") {
  TempDir tmp;
  const std::string inst = tmp.file("c.json");
  CliRun gen =
      run_cli({"gen", "--kind", "corrupted-module-unitary", "--d", "2", "--m",
               "3", "--seed", "2", "--epsilon", "0.01", "--out", inst});
  CHECK(gen.rc == 0);
  CHECK(run_cli({"verify", "--in", inst}).rc == 1);
  const std::string fact = tmp.file("cf.json");
  CliRun fac = run_cli({"factorize", "--in", inst, "--out", fact, "--json"});
  CHECK(fac.rc == 1);
  CHECK_FALSE(fs::exists(fact));
  const json rep = json::parse(fac.out);
  CHECK(rep.at("verdict").get<std::string>() == "fail");
}

TEST_CASE("cli usage and io errors exit with code 2") {
  CHECK(run_cli({"bogus"}).rc == 2);
  CHECK(run_cli({"gen", "--kind", "nope", "--out", "/tmp/x.json"}).rc == 2);
  CHECK(run_cli({"verify", "--in", "/nonexistent/file.json"}).rc == 2);
  CHECK(run_cli({"gen", "--kind", "module-unitary"}).rc == 2);  // missing --out
  CHECK(run_cli({"verify", "--in", "x.json", "--samples", "0"}).rc == 2);
  // plain kind with epsilon is a spec error
  TempDir tmp;
  CHECK(run_cli({"gen", "--kind", "module-unitary", "--d", "2", "--m", "3",
                 "--epsilon", "0.1", "--out", tmp.file("x.json")})
            .rc == 2);
}

TEST_CASE("cli byte determinism of instances and reports") {
  TempDir tmp;
  const std::string i1 = tmp.file("a.json");
  const std::string i2 = tmp.file("b.json");
  const std::vector<std::string> gen_args{"gen",    "--kind", "cstar",
                                          "--d",    "3",      "--seed",
                                          "9",      "--out",  ""};
  auto gen_to = [&](const std::string& path) {
    auto args = gen_args;
    args.back() = path;
    REQUIRE(run_cli(args).rc == 0);
  };
  gen_to(i1);
  gen_to(i2);
  CHECK(read_text_file(i1) == read_text_file(i2));

  // Reports are byte-identical once the wall clock is stripped.
  CliRun r1 = run_cli({"factorize", "--in", i1, "--json"});
  CliRun r2 = run_cli({"factorize", "--in", i1, "--json"});
  json j1 = json::parse(r1.out);
  json j2 = json::parse(r2.out);
  j1.erase("wall_clock_ms");
  j2.erase("wall_clock_ms");
  CHECK(j1.dump() == j2.dump());
}

TEST_CASE("selftest seed handling") {
  unsetenv("WIGNER_SEED");
  CHECK(selftest_seed_from_env() == kDefaultSelftestSeed);
  setenv("WIGNER_SEED", "424242", 1);
  CHECK(selftest_seed_from_env() == 424242);
  setenv("WIGNER_SEED", "not-a-number", 1);
  CHECK(selftest_seed_from_env() == kDefaultSelftestSeed);
  unsetenv("WIGNER_SEED");
}
