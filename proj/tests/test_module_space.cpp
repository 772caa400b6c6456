#include <doctest.h>

#include "test_support.hpp"

using namespace wigmod;

namespace {

ModVec seeded_vec(ModuleSpace s, std::uint64_t seed) {
  Rng rng(seed);
  return ModVec::gaussian(s, rng);
}

}  // namespace

TEST_CASE("generalized inner product axioms on seeded triples") {
  const ModuleSpace s{2, 3};
  for (std::uint64_t t = 0; t < 20; ++t) {
    Rng rng(mix_seed(21, {t}));
    const ModVec f = ModVec::gaussian(s, rng);
    const ModVec g = ModVec::gaussian(s, rng);
    const ModVec h = ModVec::gaussian(s, rng);
    const CMatrix a = CMatrix::gaussian(2, 2, rng);

    // (i) additivity
    CHECK(dist_fro(inner(f + g, h), inner(f, h) + inner(g, h)) < 1e-12);
    // (ii) [af, g] = a [f, g]
    CHECK(dist_fro(inner(alg_mul(a, f), g), a * inner(f, g)) < 1e-12);
    // (iii) [g, f] = [f, g]*
    CHECK(dist_fro(inner(g, f), inner(f, g).adjoint()) < 1e-12);
    // (iv) positivity with definiteness
    const HermEig eig = herm_eig(inner(f, f));
    CHECK(eig.values.back() >= -kTolMod);
    CHECK(inner(f, f).fro_norm() > 0.0);
  }
  CHECK(inner(ModVec::zero(s), ModVec::zero(s)).fro_norm() == 0.0);
}

TEST_CASE("inner on the unit pair gives the identity") {
  for (int d : {1, 2, 3})
    for (int m = d; m <= d + 2; ++m) {
      const auto [g, h] = make_unit_pair({d, m});
      CHECK(dist_fro(inner(g, h), CMatrix::identity(d)) == 0.0);
    }
}

TEST_CASE("inner is zero on orthogonal coordinates for d = 1") {
  const ModuleSpace s{1, 2};
  ModVec f = ModVec::basis(s, 0, 0);
  ModVec g = ModVec::basis(s, 0, 1);
  CHECK(inner(f, g).fro_norm() == 0.0);
}

TEST_CASE("tr_inner and norm") {
  const ModuleSpace s{2, 3};
  CHECK(mod_norm(ModVec::basis(s, 0, 0)) == doctest::Approx(1.0));
  for (std::uint64_t t = 0; t < 10; ++t) {
    const ModVec f = seeded_vec(s, mix_seed(22, {t}));
    const ModVec g = seeded_vec(s, mix_seed(22, {t, 1}));
    CHECK(std::abs(tr_inner(f, g) - std::conj(tr_inner(g, f))) < 1e-12);
    // norm^2 equals the sum of squared entry moduli
    double frob2 = 0.0;
    for (const auto& e : f.mat.data()) frob2 += std::norm(e);
    CHECK(mod_norm(f) * mod_norm(f) == doctest::Approx(frob2).epsilon(1e-12));
  }
  CHECK(mod_norm(ModVec::zero(s)) == 0.0);
}

TEST_CASE("submodule_project fixes points of the span and annihilates nothing else") {
  const ModuleSpace s{2, 4};
  Rng rng(23);
  const ModVec g1 = ModVec::gaussian(s, rng);
  const ModVec g2 = ModVec::gaussian(s, rng);
  const std::vector<ModVec> gens{g1, g2};

  // f in the generated submodule projects to itself
  const CMatrix a1 = CMatrix::gaussian(2, 2, rng);
  const CMatrix a2 = CMatrix::gaussian(2, 2, rng);
  const ModVec f = alg_mul(a1, g1) + alg_mul(a2, g2);
  CHECK(mod_norm(f - submodule_project(f, gens)) <= 1e-10 * mod_norm(f));

  // empty generator list projects to zero
  CHECK(mod_norm(submodule_project(f, {})) == 0.0);

  // residual is modular-orthogonal to every generator
  for (std::uint64_t t = 0; t < 10; ++t) {
    const ModVec x = seeded_vec(s, mix_seed(24, {t}));
    const ModVec r = x - submodule_project(x, gens);
    CHECK(inner(r, g1).fro_norm() <= 1e-10 * mod_norm(x) * mod_norm(g1));
    CHECK(inner(r, g2).fro_norm() <= 1e-10 * mod_norm(x) * mod_norm(g2));
  }
}

TEST_CASE("modular_gram_schmidt coincides with Gram-Schmidt for d = 1") {
  const ModuleSpace s{1, 2};
  CMatrix v1(1, 2), v2(1, 2);
  v1.at(0, 0) = 1.0;
  v2.at(0, 0) = 1.0;
  v2.at(0, 1) = 1.0;
  const ModularFamily fam = modular_gram_schmidt({{s, v1}, {s, v2}});
  REQUIRE(fam.vectors.size() == 2);
  // (1,0) and (0,1) up to unit scalars
  CHECK(std::abs(std::abs(fam.vectors[0].mat.at(0, 0)) - 1.0) < 1e-12);
  CHECK(std::abs(fam.vectors[0].mat.at(0, 1)) < 1e-12);
  CHECK(std::abs(fam.vectors[1].mat.at(0, 0)) < 1e-12);
  CHECK(std::abs(std::abs(fam.vectors[1].mat.at(0, 1)) - 1.0) < 1e-12);
}

TEST_CASE("modular_gram_schmidt splits diag(2,1) into matrix units") {
  const ModuleSpace s{2, 2};
  CMatrix g(2, 2);
  g.at(0, 0) = 2.0;
  g.at(1, 1) = 1.0;
  const ModularFamily fam = modular_gram_schmidt({{s, g}});
  REQUIRE(fam.vectors.size() == 2);
  REQUIRE(fam.lambda.size() == 2);
  CHECK(fam.lambda[0] == doctest::Approx(2.0));
  CHECK(fam.lambda[1] == doctest::Approx(1.0));
  CHECK(dist_fro(fam.vectors[0].mat, CMatrix::unit(2, 2, 0, 0)) < 1e-12);
  CHECK(dist_fro(fam.vectors[1].mat, CMatrix::unit(2, 2, 1, 1)) < 1e-12);
}

TEST_CASE("modular_gram_schmidt output is modular orthonormal and spans") {
  for (int d : {1, 2, 3})
    for (int m : {2, 4}) {
      const ModuleSpace s{d, m};
      for (std::uint64_t t = 0; t < 10; ++t) {
        Rng rng(mix_seed(25, {static_cast<std::uint64_t>(d),
                              static_cast<std::uint64_t>(m), t}));
        std::vector<ModVec> input;
        for (int k = 0; k < 3; ++k) input.push_back(ModVec::gaussian(s, rng));
        const ModularFamily fam = modular_gram_schmidt(input);
        CHECK(check_modular_orthonormal(fam.vectors).ok);
        for (const auto& f : input)
          CHECK(mod_norm(f - submodule_project(f, fam.vectors)) <=
                kTolMod * mod_norm(f));
        for (const auto& h : fam.vectors)
          CHECK(mod_norm(h - submodule_project(h, input)) <=
                kTolMod * mod_norm(h));

        // per-stage reconstruction: sum_k lambda_k h_k = g  (e_k h_k = h_k)
        for (std::size_t gi = 0; gi < fam.stage_vectors.size(); ++gi) {
          ModVec acc = ModVec::zero(s);
          for (std::size_t k = 0; k < fam.vectors.size(); ++k)
            if (fam.source_index[k] == static_cast<int>(gi))
              acc = acc + cplx(fam.lambda[k], 0.0) * fam.vectors[k];
          CHECK(mod_norm(acc - fam.stage_vectors[gi]) <=
                kTolMod * mod_norm(fam.stage_vectors[gi]));
        }
      }
    }
}

TEST_CASE("modular_gram_schmidt drops zero and dependent inputs") {
  const ModuleSpace s{2, 3};
  Rng rng(26);
  const ModVec f = ModVec::gaussian(s, rng);
  const CMatrix a = CMatrix::gaussian(2, 2, rng);
  const ModularFamily fam =
      modular_gram_schmidt({ModVec::zero(s), f, alg_mul(a, f)});
  CHECK(check_modular_orthonormal(fam.vectors).ok);
  CHECK(fam.stage_vectors.size() == 1);
}

TEST_CASE("modular_gram_schmidt is idempotent up to unit scalars") {
  const ModuleSpace s{2, 4};
  Rng rng(27);
  std::vector<ModVec> input;
  for (int k = 0; k < 2; ++k) input.push_back(ModVec::gaussian(s, rng));
  const ModularFamily fam = modular_gram_schmidt(input);
  const ModularFamily again = modular_gram_schmidt(fam.vectors);
  REQUIRE(again.vectors.size() == fam.vectors.size());
  for (std::size_t k = 0; k < fam.vectors.size(); ++k) {
    const cplx mu = tr_inner(again.vectors[k], fam.vectors[k]);
    CHECK(std::abs(std::abs(mu) - 1.0) < 1e-9);
    CHECK(mod_norm(again.vectors[k] - mu * fam.vectors[k]) < 1e-9);
  }
}

TEST_CASE("Fourier expansion over a modular orthonormal family") {
  const ModuleSpace s{2, 4};
  Rng rng(28);
  std::vector<ModVec> input;
  for (int k = 0; k < 2; ++k) input.push_back(ModVec::gaussian(s, rng));
  const ModularFamily fam = modular_gram_schmidt(input);
  // g, h in the generated submodule: [g, h] = sum_k [g, f_k][f_k, h]
  for (std::uint64_t t = 0; t < 5; ++t) {
    Rng r2(mix_seed(29, {t}));
    ModVec g = ModVec::zero(s), h = ModVec::zero(s);
    for (const auto& fk : fam.vectors) {
      g = g + alg_mul(CMatrix::gaussian(2, 2, r2), fk);
      h = h + alg_mul(CMatrix::gaussian(2, 2, r2), fk);
    }
    CMatrix sum(2, 2);
    for (const auto& fk : fam.vectors) sum += inner(g, fk) * inner(fk, h);
    CHECK(dist_fro(inner(g, h), sum) <=
          kTolMod * std::max(1.0, mod_norm(g) * mod_norm(h)));
  }
}

TEST_CASE("check_modular_orthonormal accepts and rejects as stated") {
  const ModuleSpace s{2, 2};
  const ModVec e11 = ModVec::basis(s, 0, 0);
  const ModVec e22 = ModVec::basis(s, 1, 1);
  CHECK(check_modular_orthonormal({e11, e22}).ok);
  const ModVec bad = cplx(2.0, 0.0) * e22;
  const ModularCheck chk = check_modular_orthonormal({e11, bad});
  CHECK_FALSE(chk.ok);
  CHECK(chk.offender == 1);
  // absorbing identity [f, f] f = f on the good family
  CHECK(check_modular_orthonormal({e11, e22}).max_absorb < 1e-15);
}

TEST_CASE("make_unit_pair") {
  const auto [g2, h2] = make_unit_pair({2, 2});
  CHECK(dist_fro(g2.mat, CMatrix::identity(2)) == 0.0);
  CHECK(dist_fro(inner(g2, h2), CMatrix::identity(2)) == 0.0);

  const auto [g1, h1] = make_unit_pair({1, 3});
  CHECK(g1.mat.at(0, 0) == cplx(1.0, 0.0));
  CHECK(g1.mat.at(0, 1) == cplx(0.0, 0.0));
  CHECK(g1.mat.at(0, 2) == cplx(0.0, 0.0));

  CHECK_THROWS_AS(make_unit_pair({3, 2}), Error);
  try {
    make_unit_pair({3, 2});
  } catch (const Error& e) {
    CHECK(e.code() == Errc::low_modular_dimension);
  }
}
