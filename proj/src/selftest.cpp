#include "wigmod/selftest.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "wigmod/cli.hpp"
#include "wigmod/instance.hpp"

namespace wigmod {

namespace {

std::string fmt_res(const char* label, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s=%.3e", label, value);
  return buf;
}

struct Tracker {
  double worst = 0.0;
  bool ok = true;
  void observe(double value, double limit) {
    worst = std::max(worst, value);
    if (value > limit) ok = false;
  }
};

// -- criterion 1: module-engine round trip -----------------------------------

CriterionResult criterion_module_roundtrip(std::uint64_t seed) {
  CriterionResult out{"module-round-trip", true, ""};
  Tracker recon, aunit, gauge;
  for (int d = 1; d <= 3; ++d)
    for (int m = d; m <= d + 2; ++m)
      for (int s = 0; s < 100; ++s) {
        InstanceSpec spec;
        spec.kind = InstanceKind::module_unitary;
        spec.d = d;
        spec.m = m;
        spec.seed = mix_seed(seed, {1, static_cast<std::uint64_t>(d),
                                    static_cast<std::uint64_t>(m),
                                    static_cast<std::uint64_t>(s)});
        const Instance inst = gen_instance(spec);
        const WignerFactorization f = factorize(inst.module_oracle());
        recon.observe(f.residuals.reconstruction, 1e-8);
        aunit.observe(std::max({f.residuals.unitarity, f.residuals.uni,
                                f.residuals.readoff}),
                      1e-9);
        const cplx lam = gauge_align(inst.matrix(), f.w);
        gauge.observe(dist_fro(f.w, lam * inst.matrix()), 1e-8);
      }
  out.pass = recon.ok && aunit.ok && gauge.ok;
  out.detail = fmt_res("max_recon", recon.worst) + " " +
               fmt_res("max_aunit", aunit.worst) + " " +
               fmt_res("max_gauge", gauge.worst) + " (900 instances)";
  return out;
}

// -- criterion 2: Herstein dichotomy --------------------------------------

CriterionResult criterion_dichotomy(std::uint64_t seed) {
  CriterionResult out{"herstein-dichotomy", true, ""};
  int auto_bad = 0;
  for (int d = 2; d <= 3; ++d)
    for (int m = d; m <= d + 2; ++m)
      for (int s = 0; s < 25; ++s) {
        InstanceSpec spec;
        spec.kind = InstanceKind::module_unitary;
        spec.d = d;
        spec.m = m;
        spec.seed = mix_seed(seed, {2, static_cast<std::uint64_t>(d),
                                    static_cast<std::uint64_t>(m),
                                    static_cast<std::uint64_t>(s)});
        const Instance inst = gen_instance(spec);
        const WignerFactorization f = factorize(inst.module_oracle());
        if (f.parity != Parity::automorphism || f.conjugate_linear) ++auto_bad;
      }
  int anti_bad = 0;
  Tracker anti_uni;
  for (int m = 2; m <= 4; ++m)
    for (int s = 0; s < 100; ++s) {
      InstanceSpec spec;
      spec.kind = InstanceKind::module_antiunitary;
      spec.d = 1;
      spec.m = m;
      spec.seed = mix_seed(seed, {2, 1, static_cast<std::uint64_t>(m),
                                  static_cast<std::uint64_t>(s), 7});
      const Instance inst = gen_instance(spec);
      const WignerFactorization f = factorize(inst.module_oracle());
      if (f.parity != Parity::antiautomorphism || !f.conjugate_linear)
        ++anti_bad;
      anti_uni.observe(f.residuals.uni, 1e-9);  // [Uf, Uf'] = [f', f]
    }
  out.pass = auto_bad == 0 && anti_bad == 0 && anti_uni.ok;
  std::ostringstream ss;
  ss << "misclassified_auto=" << auto_bad << " misclassified_anti=" << anti_bad
     << " " << fmt_res("max_anti_uni", anti_uni.worst);
  out.detail = ss.str();
  return out;
}

// -- criterion 3: |a| asymmetry witness ------------------------------------

CriterionResult criterion_abs_witness(std::uint64_t seed) {
  CriterionResult out{"abs-asymmetry-witness", true, ""};
  Tracker wit;
  for (int d = 2; d <= 6; ++d) {
    const CMatrix e12 = CMatrix::unit(d, d, 0, 1);
    const CMatrix e21 = CMatrix::unit(d, d, 1, 0);
    wit.observe(dist_fro(abs_elem(e12), CMatrix::unit(d, d, 1, 1)), 1e-14);
    wit.observe(dist_fro(abs_elem(e21), CMatrix::unit(d, d, 0, 0)), 1e-14);
    // and the two absolute values must differ
    if (dist_fro(abs_elem(e12), abs_elem(e21)) < 0.5) out.pass = false;
  }
  int scalar_bad = 0;
  Rng rng(mix_seed(seed, {3}));
  for (int s = 0; s < 1000; ++s) {
    const CMatrix a = CMatrix::gaussian(1, 1, rng);
    const CMatrix l = abs_elem(a);
    const CMatrix r = abs_elem(a.adjoint());
    if (l.at(0, 0) != r.at(0, 0)) ++scalar_bad;  // exact equality
  }
  out.pass = out.pass && wit.ok && scalar_bad == 0;
  out.detail = fmt_res("max_witness_dev", wit.worst) + " scalar_mismatch=" +
               std::to_string(scalar_bad);
  return out;
}

// -- criterion 4: orthonormalization and spectral resolution ---------------

CriterionResult criterion_decompositions(std::uint64_t seed) {
  CriterionResult out{"decomposition-suite", true, ""};
  int gs_bad = 0, span_bad = 0;
  Tracker spec_recon;
  int spec_bad = 0;
  for (int d = 1; d <= 3; ++d)
    for (int m = 1; m <= 5; ++m) {
      const ModuleSpace s{d, m};
      for (int t = 0; t < 100; ++t) {
        Rng rng(mix_seed(seed, {4, static_cast<std::uint64_t>(d),
                                static_cast<std::uint64_t>(m),
                                static_cast<std::uint64_t>(t)}));
        std::vector<ModVec> input;
        for (int k = 0; k < 3; ++k) input.push_back(ModVec::gaussian(s, rng));
        const ModularFamily fam = modular_gram_schmidt(input);
        if (!check_modular_orthonormal(fam.vectors).ok) ++gs_bad;
        bool span_ok = true;
        for (const auto& f : input) {
          const ModVec res = f - submodule_project(f, fam.vectors);
          if (mod_norm(res) > kTolMod * mod_norm(f)) span_ok = false;
        }
        for (const auto& h : fam.vectors) {
          const ModVec res = h - submodule_project(h, input);
          if (mod_norm(res) > kTolMod * mod_norm(h)) span_ok = false;
        }
        if (!span_ok) ++span_bad;

        // Lemma 2: reconstruct a seeded self-adjoint operator.
        const CMatrix rf =
            CMatrix::gaussian(m, m, rng).hermitized();
        const ALinOp op{s, rf};
        const SpectralData sd = spectral_resolution(op);
        CMatrix rec(m, m);
        for (std::size_t k = 0; k < sd.lambdas.size(); ++k)
          rec += sd.lambdas[k] * dyad(sd.vectors[k], sd.vectors[k]).rf;
        spec_recon.observe(dist_fro(rec, rf) / std::max(rf.fro_norm(), 1e-300),
                           1e-10);
        if (!check_modular_orthonormal(sd.vectors).ok) ++spec_bad;
      }
    }
  out.pass = gs_bad == 0 && span_bad == 0 && spec_recon.ok && spec_bad == 0;
  std::ostringstream ss;
  ss << "gs_fail=" << gs_bad << " span_fail=" << span_bad << " "
     << fmt_res("max_spec_recon", spec_recon.worst)
     << " spec_family_fail=" << spec_bad;
  out.detail = ss.str();
  return out;
}

// -- criterion 5: dyad calculus -------------------------------------------

CriterionResult criterion_dyads(std::uint64_t seed) {
  CriterionResult out{"dyad-calculus", true, ""};
  Tracker prop1, prop2;
  for (int d = 1; d <= 3; ++d)
    for (int m = 1; m <= 5; ++m) {
      const ModuleSpace s{d, m};
      Rng rng(mix_seed(seed, {5, static_cast<std::uint64_t>(d),
                              static_cast<std::uint64_t>(m)}));
      for (int t = 0; t < 1000; ++t) {
        const ModVec f = ModVec::gaussian(s, rng);
        const ModVec g = ModVec::gaussian(s, rng);
        const ModVec f2 = ModVec::gaussian(s, rng);
        const ModVec g2 = ModVec::gaussian(s, rng);
        const ALinOp sop{s, CMatrix::gaussian(m, m, rng)};
        const double scale1 =
            std::max(op_norm(sop) * mod_norm(f) * mod_norm(g), 1e-300);
        prop1.observe(
            dist_fro(op_compose(sop, dyad(f, g)).rf,
                     dyad(op_apply(sop, f), g).rf) /
                scale1,
            1e-12);
        prop1.observe(
            dist_fro(op_compose(dyad(f, g), sop).rf,
                     dyad(f, op_apply(op_adjoint(sop), g)).rf) /
                scale1,
            1e-12);
        const double scale2 =
            std::max(mod_norm(f) * mod_norm(g) * mod_norm(f2) * mod_norm(g2),
                     1e-300);
        prop2.observe(
            dist_fro(op_compose(dyad(f, g), dyad(f2, g2)).rf,
                     dyad(alg_mul(inner(f2, g), f), g2).rf) /
                scale2,
            1e-12);
      }
    }
  out.pass = prop1.ok && prop2.ok;
  out.detail = fmt_res("max_prop1", prop1.worst) + " " +
               fmt_res("max_prop2", prop2.worst) + " (15000 tuples each)";
  return out;
}

// -- criterion 6: psi well-definedness -------------------------------------

CriterionResult criterion_welldef(std::uint64_t seed) {
  CriterionResult out{"psi-well-definedness", true, ""};
  Tracker valid;
  double min_corrupt = 1e300;
  int not_rejected = 0;
  for (int d = 1; d <= 3; ++d)
    for (int s = 0; s < 10; ++s) {
      InstanceSpec spec;
      spec.kind = InstanceKind::module_unitary;
      spec.d = d;
      spec.m = d + 1;
      spec.seed = mix_seed(seed, {6, static_cast<std::uint64_t>(d),
                                  static_cast<std::uint64_t>(s)});
      const Instance inst = gen_instance(spec);
      const JordanMap psi = build_jordan_map(inst.module_oracle());
      valid.observe(psi.welldef_residual(), 1e-9);

      InstanceSpec bad = spec;
      bad.corruption = Corruption{1e-2, std::nullopt, {}, {}};
      const Instance corrupt = gen_instance(bad);
      try {
        build_jordan_map(corrupt.module_oracle());
        ++not_rejected;
      } catch (const Error& e) {
        if (e.code() != Errc::ill_defined || e.residual() < 1e-4)
          ++not_rejected;
        min_corrupt = std::min(min_corrupt, e.residual());
      }
    }
  out.pass = valid.ok && not_rejected == 0;
  std::ostringstream ss;
  ss << fmt_res("max_valid", valid.worst) << " "
     << fmt_res("min_corrupt", min_corrupt) << " missed=" << not_rejected;
  out.detail = ss.str();
  return out;
}

// -- criterion 7: matrix-algebra engine round trip -------------------------------------

CriterionResult criterion_cstar_roundtrip(std::uint64_t seed) {
  CriterionResult out{"cstar-round-trip", true, ""};
  Tracker u_dev, unit, phase_dev, recon, psi_id;
  for (int d = 1; d <= 4; ++d)
    for (int s = 0; s < 100; ++s) {
      InstanceSpec spec;
      spec.kind = InstanceKind::cstar;
      spec.d = d;
      spec.seed = mix_seed(seed, {7, static_cast<std::uint64_t>(d),
                                  static_cast<std::uint64_t>(s)});
      const Instance inst = gen_instance(spec);
      const CstarOracle phi = inst.cstar_oracle();
      const auto samples = inst.cstar_samples(8);
      const CstarFactorization f = cstar_factorize(phi, samples);
      u_dev.observe(dist_fro(f.u, inst.matrix()), 1e-12);
      unit.observe(f.residuals.unitarity, 1e-10);
      recon.observe(f.residuals.reconstruction, 1e-8);
      for (std::size_t k = 0; k < samples.size(); ++k)
        phase_dev.observe(
            std::abs(f.phases[k] - inst.true_cstar_phase(samples[k])), 1e-8);
      const CstarPsiCheck pc = cstar_psi_check(phi);
      psi_id.observe(pc.psi_identity_distance, 1e-9);
    }
  out.pass = u_dev.ok && unit.ok && phase_dev.ok && recon.ok && psi_id.ok;
  out.detail = fmt_res("max_u_dev", u_dev.worst) + " " +
               fmt_res("max_unit", unit.worst) + " " +
               fmt_res("max_phase_dev", phase_dev.worst) + " " +
               fmt_res("max_recon", recon.worst) + " " +
               fmt_res("max_psi_id", psi_id.worst);
  return out;
}

// -- criterion 8: real-engine round trip -------------------------------------

CriterionResult criterion_real_roundtrip(std::uint64_t seed) {
  CriterionResult out{"real-round-trip", true, ""};
  Tracker u_dev, verif;
  int sign_bad = 0;
  for (int n = 1; n <= 8; ++n)
    for (int s = 0; s < 100; ++s) {
      InstanceSpec spec;
      spec.kind = InstanceKind::real;
      spec.n = n;
      spec.seed = mix_seed(seed, {8, static_cast<std::uint64_t>(n),
                                  static_cast<std::uint64_t>(s)});
      const Instance inst = gen_instance(spec);
      const RealOracle t = inst.real_oracle();
      const auto samples = inst.real_samples(8);
      const RealFactorization f = real_factorize(t, samples);
      const double plus = (f.u - inst.real_matrix()).fro_norm();
      const double minus = (f.u + inst.real_matrix()).fro_norm();
      u_dev.observe(std::min(plus, minus), 1e-8);
      for (double sg : f.signs)
        if (sg != 1.0 && sg != -1.0) ++sign_bad;
      verif.observe(real_verify(t, samples, 1e-10).max_residual, 1e-10);
    }
  out.pass = u_dev.ok && sign_bad == 0 && verif.ok;
  out.detail = fmt_res("max_u_dev", u_dev.worst) + " bad_signs=" +
               std::to_string(sign_bad) + " " +
               fmt_res("max_verifier", verif.worst);
  return out;
}

// -- criterion 9: rejection of corrupted instances -------------------------

CriterionResult criterion_rejection(std::uint64_t seed) {
  CriterionResult out{"corruption-rejection", true, ""};
  namespace fs = std::filesystem;
  const fs::path dir =
      fs::temp_directory_path() /
      ("wigmod-selftest-" + std::to_string(static_cast<unsigned long long>(
                                mix_seed(seed, {9, 0xd1}))));
  fs::create_directories(dir);
  int bad = 0;
  int checked = 0;
  const double epsilons[] = {1e-3, 1e-2, 1e-1};

  auto pipeline = [&](const InstanceSpec& spec) {
    const Instance inst = gen_instance(spec);
    const fs::path in = dir / ("i" + std::to_string(checked) + ".json");
    const fs::path fout = dir / ("f" + std::to_string(checked) + ".json");
    write_text_file(in.string(), inst.to_json().dump(2) + "\n");
    ++checked;
    std::ostringstream sink, esink;
    const int vrc = cli_main({"verify", "--in", in.string()}, sink, esink);
    const int frc = cli_main(
        {"factorize", "--in", in.string(), "--out", fout.string()}, sink, esink);
    // A corrupted instance must verified-fail and must never leave a
    // factorization behind that claims success.
    if (vrc != 1 || frc != 1 || fs::exists(fout)) ++bad;
  };

  for (double eps : epsilons) {
    for (InstanceKind kind :
         {InstanceKind::module_unitary, InstanceKind::module_antiunitary,
          InstanceKind::cstar, InstanceKind::real}) {
      InstanceSpec spec;
      spec.kind = kind;
      spec.d = kind == InstanceKind::module_antiunitary ? 1 : 2;
      spec.m = 3;
      spec.n = 4;
      spec.seed = mix_seed(seed, {9, static_cast<std::uint64_t>(kind),
                                  static_cast<std::uint64_t>(eps * 1e6)});
      spec.corruption = Corruption{eps, std::nullopt, {}, {}};
      pipeline(spec);
      // Targeted mode: one designated output scaled.
      InstanceSpec targeted = spec;
      targeted.corruption = Corruption{eps, 3, {}, {}};
      pipeline(targeted);
    }
  }
  fs::remove_all(dir);
  out.pass = bad == 0;
  out.detail =
      "pipelines=" + std::to_string(checked) + " escaped=" + std::to_string(bad);
  return out;
}

CriterionResult guarded(CriterionResult (*fn)(std::uint64_t),
                        std::uint64_t seed, const char* name) {
  try {
    return fn(seed);
  } catch (const std::exception& e) {
    return {name, false, std::string("unexpected error: ") + e.what()};
  }
}

std::vector<CriterionResult> run_criteria(std::uint64_t seed) {
  return {
      guarded(criterion_module_roundtrip, seed, "module-round-trip"),
      guarded(criterion_dichotomy, seed, "herstein-dichotomy"),
      guarded(criterion_abs_witness, seed, "abs-asymmetry-witness"),
      guarded(criterion_decompositions, seed, "decomposition-suite"),
      guarded(criterion_dyads, seed, "dyad-calculus"),
      guarded(criterion_welldef, seed, "psi-well-definedness"),
      guarded(criterion_cstar_roundtrip, seed, "cstar-round-trip"),
      guarded(criterion_real_roundtrip, seed, "real-round-trip"),
      guarded(criterion_rejection, seed, "corruption-rejection"),
  };
}

std::string render_lines(const std::vector<CriterionResult>& lines,
                         std::uint64_t seed) {
  std::ostringstream ss;
  char head[96];
  std::snprintf(head, sizeof head, "wigmod selftest (seed %" PRIu64 ")\n",
                seed);
  ss << head;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "[%2zu] ", i + 1);
    ss << buf << lines[i].name;
    for (std::size_t p = lines[i].name.size(); p < 26; ++p) ss << ' ';
    ss << (lines[i].pass ? "PASS  " : "FAIL  ") << lines[i].detail << "\n";
  }
  return ss.str();
}

}  // namespace

std::uint64_t selftest_seed_from_env() {
  if (const char* env = std::getenv("WIGNER_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return static_cast<std::uint64_t>(v);
  }
  return kDefaultSelftestSeed;
}

SelftestReport run_selftest(std::uint64_t seed) {
  SelftestReport rep;
  rep.seed = seed;
  rep.criteria = run_criteria(seed);
  const std::string first = render_lines(rep.criteria, seed);

  // Criterion 10: a full re-run must reproduce the table byte for byte.
  CriterionResult det{"report-determinism", false, ""};
  const std::string second = render_lines(run_criteria(seed), seed);
  det.pass = (first == second);
  det.detail = det.pass ? "re-run byte-identical" : "re-run differs";
  rep.criteria.push_back(det);

  rep.all_pass = true;
  for (const auto& c : rep.criteria) rep.all_pass = rep.all_pass && c.pass;

  std::ostringstream ss;
  ss << render_lines(rep.criteria, seed);
  ss << "selftest: " << (rep.all_pass ? "PASS" : "FAIL") << " ("
     << rep.criteria.size() << " criteria)\n";
  rep.rendered = ss.str();
  return rep;
}

}  // namespace wigmod
