#include <doctest.h>

#include "test_support.hpp"
#include "wigmod/instance.hpp"
#include "wigmod/operator_algebra.hpp"

using namespace wigmod;

TEST_CASE("dyad stated examples") {
  // d = m = 1: the dyad of the unit vector with itself is the identity
  const ModuleSpace s1{1, 1};
  CMatrix one(1, 1);
  one.at(0, 0) = 1.0;
  const ModVec u{s1, one};
  CHECK(dist_fro(dyad(u, u).rf, CMatrix::identity(1)) == 0.0);

  const ModuleSpace s{2, 2};
  const ModVec e11 = ModVec::basis(s, 0, 0);
  const ModVec e22 = ModVec::basis(s, 1, 1);
  const ALinOp d11 = dyad(e11, e11);
  CHECK(dist_fro(op_apply(d11, e11).mat, e11.mat) == 0.0);
  CHECK(op_apply(d11, e22).mat.fro_norm() == 0.0);
}

TEST_CASE("dyad definition oracle on seeded tuples") {
  const ModuleSpace s{2, 3};
  for (std::uint64_t t = 0; t < 20; ++t) {
    Rng rng(mix_seed(31, {t}));
    const ModVec f = ModVec::gaussian(s, rng);
    const ModVec g = ModVec::gaussian(s, rng);
    const ModVec h = ModVec::gaussian(s, rng);
    const ModVec lhs = op_apply(dyad(f, g), h);
    const ModVec rhs = alg_mul(inner(h, g), f);
    CHECK(dist_fro(lhs.mat, rhs.mat) < 1e-12 * mod_norm(f) * mod_norm(g) *
                                           mod_norm(h));
  }
}

TEST_CASE("A-linearity holds identically in the right-factor model") {
  const ModuleSpace s{2, 3};
  Rng rng(30);
  const ALinOp op{s, CMatrix::gaussian(3, 3, rng)};
  const ModVec f = ModVec::gaussian(s, rng);
  const CMatrix a = CMatrix::gaussian(2, 2, rng);
  CHECK(dist_fro(op_apply(op, alg_mul(a, f)).mat,
                 alg_mul(a, op_apply(op, f)).mat) < 1e-13);
}

TEST_CASE("compose, adjoint, identity") {
  const ModuleSpace s{2, 3};
  Rng rng(32);
  const ALinOp a{s, CMatrix::gaussian(3, 3, rng)};
  CHECK(dist_fro(op_compose(a, ALinOp::identity(s)).rf, a.rf) == 0.0);
  CHECK(dist_fro(op_compose(ALinOp::identity(s), a).rf, a.rf) == 0.0);

  const ModVec f = ModVec::gaussian(s, rng);
  const ModVec g = ModVec::gaussian(s, rng);
  CHECK(dist_fro(op_adjoint(dyad(f, g)).rf, dyad(g, f).rf) < 1e-13);

  // adjoint oracle: tr_inner(S f, g) = tr_inner(f, S* g)
  for (std::uint64_t t = 0; t < 20; ++t) {
    Rng r2(mix_seed(33, {t}));
    const ALinOp op{s, CMatrix::gaussian(3, 3, r2)};
    const ModVec x = ModVec::gaussian(s, r2);
    const ModVec y = ModVec::gaussian(s, r2);
    CHECK(std::abs(tr_inner(op_apply(op, x), y) -
                   tr_inner(x, op_apply(op_adjoint(op), y))) < 1e-11);
    // [Sf, g] = [f, S* g] as algebra elements
    CHECK(dist_fro(inner(op_apply(op, x), y),
                   inner(x, op_apply(op_adjoint(op), y))) < 1e-11);
  }
}

TEST_CASE("dyad calculus identities") {
  for (int d : {1, 2, 3})
    for (int m : {1, 3}) {
      const ModuleSpace s{d, m};
      Rng rng(mix_seed(34, {static_cast<std::uint64_t>(d),
                            static_cast<std::uint64_t>(m)}));
      for (int t = 0; t < 50; ++t) {
        const ModVec f = ModVec::gaussian(s, rng);
        const ModVec g = ModVec::gaussian(s, rng);
        const ModVec f2 = ModVec::gaussian(s, rng);
        const ModVec g2 = ModVec::gaussian(s, rng);
        const ALinOp op{s, CMatrix::gaussian(m, m, rng)};
        const double sc = op_norm(op) * mod_norm(f) * mod_norm(g);
        CHECK(dist_fro(op_compose(op, dyad(f, g)).rf,
                       dyad(op_apply(op, f), g).rf) <= 1e-12 * sc);
        CHECK(dist_fro(op_compose(dyad(f, g), op).rf,
                       dyad(f, op_apply(op_adjoint(op), g)).rf) <= 1e-12 * sc);
        const double sc2 =
            mod_norm(f) * mod_norm(g) * mod_norm(f2) * mod_norm(g2);
        CHECK(dist_fro(op_compose(dyad(f, g), dyad(f2, g2)).rf,
                       dyad(alg_mul(inner(f2, g), f), g2).rf) <= 1e-12 * sc2);
      }
    }
}

TEST_CASE("primeness witness: S (f dyad g) R is not identically zero") {
  const ModuleSpace s{2, 3};
  for (std::uint64_t t = 0; t < 10; ++t) {
    Rng rng(mix_seed(35, {t}));
    const ALinOp sop{s, CMatrix::gaussian(3, 3, rng)};
    const ALinOp rop{s, CMatrix::gaussian(3, 3, rng)};
    bool witness = false;
    for (int i = 0; i < s.d && !witness; ++i)
      for (int j = 0; j < s.m && !witness; ++j)
        for (int k = 0; k < s.d && !witness; ++k)
          for (int l = 0; l < s.m && !witness; ++l) {
            const ALinOp mid = dyad(ModVec::basis(s, i, j), ModVec::basis(s, k, l));
            if (op_norm(op_compose(op_compose(sop, mid), rop)) > 1e-8)
              witness = true;
          }
    CHECK(witness);
  }
}

TEST_CASE("spectral_resolution stated examples") {
  const ModuleSpace s{2, 3};
  // idempotent case: dyad(f, f) with [f, f] a minimal projection
  CMatrix fm(2, 3);
  fm.at(0, 0) = cplx(0.6, 0.0);
  fm.at(0, 1) = cplx(0.0, 0.8);
  const ModVec f{s, fm};  // unit row in the first coordinate slot
  const ALinOp sop = dyad(f, f);
  const SpectralData sd = spectral_resolution(sop);
  REQUIRE(sd.lambdas.size() == 1);
  CHECK(sd.lambdas[0] == doctest::Approx(1.0));
  CHECK(dist_fro(dyad(sd.vectors[0], sd.vectors[0]).rf, sop.rf) < 1e-12);

  CHECK(spectral_resolution(ALinOp::zero(s)).lambdas.empty());

  CHECK_THROWS_AS(
      spectral_resolution(ALinOp{s, CMatrix::unit(3, 3, 0, 1)}), Error);
}

TEST_CASE("spectral_resolution reconstructs seeded self-adjoint operators") {
  const ModuleSpace s{2, 3};
  for (std::uint64_t t = 0; t < 25; ++t) {
    Rng rng(mix_seed(36, {t}));
    const ALinOp op{s, wigtest::random_hermitian(3, rng)};
    const SpectralData sd = spectral_resolution(op);
    CMatrix rec(3, 3);
    for (std::size_t k = 0; k < sd.lambdas.size(); ++k)
      rec += sd.lambdas[k] * dyad(sd.vectors[k], sd.vectors[k]).rf;
    CHECK(dist_fro(rec, op.rf) <= 1e-10 * op_norm(op));
    CHECK(check_modular_orthonormal(sd.vectors).ok);
  }
}

namespace {

TransformOracle identity_oracle(ModuleSpace s) {
  TransformOracle t;
  t.space = s;
  t.eval = [](const ModVec& f) { return f; };
  return t;
}

TransformOracle right_mult_oracle(ModuleSpace s, CMatrix w) {
  TransformOracle t;
  t.space = s;
  t.eval = [w = std::move(w)](const ModVec& f) {
    return ModVec{f.space, f.mat * w};
  };
  return t;
}

TransformOracle conj_oracle(ModuleSpace s) {
  TransformOracle t;
  t.space = s;
  t.eval = [](const ModVec& f) { return ModVec{f.space, f.mat.conj()}; };
  return t;
}

}  // namespace

TEST_CASE("build_jordan_map on the identity oracle") {
  const ModuleSpace s{2, 3};
  const JordanMap psi = build_jordan_map(identity_oracle(s));
  CHECK(psi.welldef_residual() <= 1e-12);
  Rng rng(37);
  const CMatrix x = CMatrix::gaussian(3, 3, rng);
  CHECK(dist_fro(psi.apply_rf(x), x) <= 1e-11 * x.fro_norm());
}

TEST_CASE("Psi of an A-unitary with trivial phase conjugates by it") {
  const ModuleSpace s{2, 3};
  const CMatrix w = random_unitary(3, 5);
  const JordanMap psi = build_jordan_map(right_mult_oracle(s, w));
  const ALinOp u{s, w};
  Rng rng(38);
  for (int t = 0; t < 5; ++t) {
    const ALinOp r{s, CMatrix::gaussian(3, 3, rng)};
    // Psi(R) = U R U* at operator level
    const ALinOp lhs = psi.apply(r);
    const ALinOp rhs = op_compose(u, op_compose(r, op_adjoint(u)));
    CHECK(dist_fro(lhs.rf, rhs.rf) <= 1e-10 * op_norm(r));
  }
}

TEST_CASE("Psi is *-preserving and squares correctly on self-adjoint input") {
  const ModuleSpace s{2, 3};
  InstanceSpec spec;
  spec.kind = InstanceKind::module_unitary;
  spec.d = 2;
  spec.m = 3;
  spec.seed = 99;
  const Instance inst = gen_instance(spec);
  const JordanMap psi = build_jordan_map(inst.module_oracle());
  Rng rng(39);
  for (int t = 0; t < 5; ++t) {
    const ALinOp r{s, CMatrix::gaussian(3, 3, rng)};
    CHECK(dist_fro(psi.apply(op_adjoint(r)).rf, op_adjoint(psi.apply(r)).rf) <=
          1e-9 * op_norm(r));
    const ALinOp h{s, wigtest::random_hermitian(3, rng)};
    CHECK(dist_fro(psi.apply(op_compose(h, h)).rf,
                   op_compose(psi.apply(h), psi.apply(h)).rf) <=
          1e-9 * op_norm(h) * op_norm(h));
  }
}

TEST_CASE("a valid oracle maps modular orthonormal families to such") {
  const ModuleSpace s{2, 4};
  InstanceSpec spec;
  spec.kind = InstanceKind::module_unitary;
  spec.d = 2;
  spec.m = 4;
  spec.seed = 4242;
  const Instance inst = gen_instance(spec);
  const TransformOracle t = inst.module_oracle();
  Rng rng(40);
  std::vector<ModVec> input;
  for (int k = 0; k < 3; ++k) input.push_back(ModVec::gaussian(s, rng));
  const ModularFamily fam = modular_gram_schmidt(input);
  REQUIRE(check_modular_orthonormal(fam.vectors).ok);
  std::vector<ModVec> mapped;
  for (const auto& fk : fam.vectors) mapped.push_back(t.eval(fk));
  CHECK(check_modular_orthonormal(mapped, 1e-7).ok);
}

TEST_CASE("build_jordan_map rejects a corrupted oracle") {
  InstanceSpec spec;
  spec.kind = InstanceKind::module_unitary;
  spec.d = 2;
  spec.m = 3;
  spec.seed = 7;
  spec.corruption = Corruption{1e-2, std::nullopt, {}, {}};
  const Instance inst = gen_instance(spec);
  CHECK_THROWS_AS(build_jordan_map(inst.module_oracle()), Error);
  try {
    build_jordan_map(inst.module_oracle());
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ill_defined);
    CHECK(e.residual() >= 1e-4);
  }
}

TEST_CASE("perturbation sweep locates the rejection threshold") {
  InstanceSpec spec;
  spec.kind = InstanceKind::module_unitary;
  spec.d = 2;
  spec.m = 3;
  spec.seed = 8;
  double prev = 0.0;
  for (double eps : {1e-9, 1e-5, 1e-3, 1e-1}) {
    spec.corruption = Corruption{eps, std::nullopt, {}, {}};
    const Instance inst = gen_instance(spec);
    double observed = 0.0;
    bool rejected = false;
    try {
      observed = build_jordan_map(inst.module_oracle()).welldef_residual();
    } catch (const Error& e) {
      REQUIRE(e.code() == Errc::ill_defined);
      observed = e.residual();
      rejected = true;
    }
    // residual scales with the perturbation; rejection flips once it
    // crosses the pipeline tolerance
    CHECK(observed > prev);
    CHECK(rejected == (observed > kTolWig));
    if (eps <= 1e-9) CHECK_FALSE(rejected);
    if (eps >= 1e-5) CHECK(rejected);
    prev = observed;
  }
}

TEST_CASE("classify_parity") {
  const ModuleSpace s2{2, 3};
  JordanMap psi_id = build_jordan_map(identity_oracle(s2));
  CHECK(classify_parity(psi_id) == Parity::automorphism);

  // d = 1, entrywise conjugation is the canonical antiunitary
  const ModuleSpace s1{1, 3};
  JordanMap psi_conj = build_jordan_map(conj_oracle(s1));
  CHECK(classify_parity(psi_conj) == Parity::antiautomorphism);

  // any valid d >= 2 instance is an automorphism
  InstanceSpec spec;
  spec.kind = InstanceKind::module_unitary;
  spec.d = 2;
  spec.m = 3;
  spec.seed = 11;
  JordanMap psi_gen = build_jordan_map(gen_instance(spec).module_oracle());
  CHECK(classify_parity(psi_gen) == Parity::automorphism);
}
