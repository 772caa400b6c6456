#include "wigmod/instance.hpp"

#include <cmath>

namespace wigmod {

namespace {

constexpr std::uint64_t kSaltPhase = 0x70686173;    // phase-function stream
constexpr std::uint64_t kSaltCorrupt = 0x636f7272;  // noise-factor stream
constexpr std::uint64_t kSaltSamples = 0x76736d70;  // canonical samples

std::uint64_t hash_cmatrix(const CMatrix& m, std::uint64_t seed) {
  std::vector<std::uint8_t> bytes;
  bytes.reserve(16 * m.data().size() + 16);
  append_canonical_bytes(bytes, m);
  return fnv1a64(bytes, seed);
}

std::uint64_t hash_rvec(const std::vector<double>& x, std::uint64_t seed) {
  std::vector<std::uint8_t> bytes;
  bytes.reserve(8 * x.size());
  for (double v : x) append_canonical_double(bytes, v);
  return fnv1a64(bytes, seed);
}

bool bitwise_equal(const CMatrix& a, const CMatrix& b) {
  if (!a.same_shape(b)) return false;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    if (a.data()[k] != b.data()[k]) return false;
  return true;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] != b[k]) return false;
  return true;
}

}  // namespace

const char* kind_name(InstanceKind k) {
  switch (k) {
    case InstanceKind::module_unitary: return "module-unitary";
    case InstanceKind::module_antiunitary: return "module-antiunitary";
    case InstanceKind::cstar: return "cstar";
    case InstanceKind::real: return "real";
  }
  return "unknown";
}

InstanceKind kind_from_name(const std::string& name, bool& corrupted) {
  std::string base = name;
  corrupted = false;
  if (base.rfind("corrupted-", 0) == 0) {
    corrupted = true;
    base = base.substr(10);
  }
  if (base == "module-unitary" || base == "module") return InstanceKind::module_unitary;
  if (base == "module-antiunitary") return InstanceKind::module_antiunitary;
  if (base == "cstar") return InstanceKind::cstar;
  if (base == "real") return InstanceKind::real;
  fail(Errc::invalid_spec, "unknown instance kind '" + name + "'");
}

Instance Instance::generate(const InstanceSpec& spec) {
  Instance inst;
  inst.spec_ = spec;
  switch (spec.kind) {
    case InstanceKind::module_unitary:
    case InstanceKind::module_antiunitary:
      if (spec.d < 1 || spec.m < 1)
        fail(Errc::invalid_spec, "module instance needs d, m >= 1");
      if (spec.kind == InstanceKind::module_antiunitary && spec.d != 1)
        fail(Errc::invalid_spec, "module-antiunitary requires d = 1");
      inst.mat_ = random_unitary(spec.m, spec.seed);
      break;
    case InstanceKind::cstar:
      if (spec.d < 1) fail(Errc::invalid_spec, "cstar instance needs d >= 1");
      inst.mat_ = random_unitary(spec.d, spec.seed);
      break;
    case InstanceKind::real:
      if (spec.n < 1) fail(Errc::invalid_spec, "real instance needs n >= 1");
      inst.rmat_ = random_orthogonal(spec.n, spec.seed);
      break;
  }
  if (spec.corruption) {
    if (!(spec.corruption->epsilon > 0.0))
      fail(Errc::invalid_spec, "corrupted instance needs epsilon > 0");
    if (spec.corruption->target) {
      const int idx = *spec.corruption->target;
      if (idx < 0) fail(Errc::invalid_spec, "corruption target must be >= 0");
      // Materialize the designated canonical sample.
      Corruption& c = *inst.spec_.corruption;
      switch (spec.kind) {
        case InstanceKind::module_unitary:
        case InstanceKind::module_antiunitary:
          c.target_mat = inst.module_samples(idx + 1).back().mat;
          break;
        case InstanceKind::cstar:
          c.target_mat = inst.cstar_samples(idx + 1).back();
          break;
        case InstanceKind::real:
          c.target_vec = inst.real_samples(idx + 1).back();
          break;
      }
    }
  }
  return inst;
}

Instance gen_instance(const InstanceSpec& spec) {
  return Instance::generate(spec);
}

double Instance::corruption_factor_cplx(const CMatrix& input) const {
  if (!spec_.corruption) return 1.0;
  const Corruption& c = *spec_.corruption;
  if (c.target)
    return bitwise_equal(input, c.target_mat) ? 1.0 + c.epsilon : 1.0;
  const std::uint64_t h = hash_cmatrix(input, mix_seed(spec_.seed, {kSaltCorrupt}));
  return 1.0 + c.epsilon * unit_interval_from_hash(h);
}

double Instance::corruption_factor_real(const std::vector<double>& input) const {
  if (!spec_.corruption) return 1.0;
  const Corruption& c = *spec_.corruption;
  if (c.target)
    return bitwise_equal(input, c.target_vec) ? 1.0 + c.epsilon : 1.0;
  const std::uint64_t h = hash_rvec(input, mix_seed(spec_.seed, {kSaltCorrupt}));
  return 1.0 + c.epsilon * unit_interval_from_hash(h);
}

cplx Instance::true_module_phase(const ModVec& f) const {
  return phase_from_hash(
      hash_cmatrix(f.mat, mix_seed(spec_.seed, {kSaltPhase})));
}

cplx Instance::true_cstar_phase(const CMatrix& a) const {
  const std::uint64_t s = mix_seed(spec_.seed, {kSaltPhase});
  const cplx at_i = phase_from_hash(
      hash_cmatrix(CMatrix::identity(spec_.d), s));
  // Normalized so the phase at I is exactly 1: Phi(I) = U0 is then the
  // stored ground truth with no leftover scalar.
  return phase_from_hash(hash_cmatrix(a, s)) * std::conj(at_i);
}

double Instance::true_real_sign(const std::vector<double>& x) const {
  return sign_from_hash(hash_rvec(x, mix_seed(spec_.seed, {kSaltPhase})));
}

TransformOracle Instance::module_oracle() const {
  if (spec_.kind != InstanceKind::module_unitary &&
      spec_.kind != InstanceKind::module_antiunitary)
    fail(Errc::invalid_spec, "not a module instance");
  TransformOracle t;
  t.space = module_space();
  t.kind = kind_name(spec_.kind);
  t.seed = spec_.seed;
  const bool anti = spec_.kind == InstanceKind::module_antiunitary;
  const Instance self = *this;  // oracles hold their own copy
  t.eval = [self, anti](const ModVec& f) {
    const CMatrix base = anti ? f.mat.conj() * self.mat_ : f.mat * self.mat_;
    const cplx phase = self.true_module_phase(f);
    const double factor = self.corruption_factor_cplx(f.mat);
    return ModVec{f.space, (factor * phase) * base};
  };
  return t;
}

CstarOracle Instance::cstar_oracle() const {
  if (spec_.kind != InstanceKind::cstar)
    fail(Errc::invalid_spec, "not a cstar instance");
  CstarOracle phi;
  phi.d = spec_.d;
  phi.kind = kind_name(spec_.kind);
  phi.seed = spec_.seed;
  const Instance self = *this;
  phi.eval = [self](const CMatrix& a) {
    const cplx phase = self.true_cstar_phase(a);
    const double factor = self.corruption_factor_cplx(a);
    return (factor * phase) * (a * self.mat_);
  };
  return phi;
}

RealOracle Instance::real_oracle() const {
  if (spec_.kind != InstanceKind::real)
    fail(Errc::invalid_spec, "not a real instance");
  RealOracle t;
  t.n = spec_.n;
  t.kind = kind_name(spec_.kind);
  t.seed = spec_.seed;
  const Instance self = *this;
  t.eval = [self](const std::vector<double>& x) {
    std::vector<double> y = self.rmat_.matvec(x);
    const double s = self.true_real_sign(x) * self.corruption_factor_real(x);
    for (double& v : y) v *= s;
    return y;
  };
  return t;
}

std::vector<ModVec> Instance::module_samples(int count) const {
  Rng rng(mix_seed(spec_.seed, {kSaltSamples}));
  std::vector<ModVec> out;
  out.reserve(count);
  const ModuleSpace s = module_space();
  for (int i = 0; i < count; ++i) out.push_back(ModVec::gaussian(s, rng));
  return out;
}

std::vector<CMatrix> Instance::cstar_samples(int count) const {
  Rng rng(mix_seed(spec_.seed, {kSaltSamples}));
  std::vector<CMatrix> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i)
    out.push_back(CMatrix::gaussian(spec_.d, spec_.d, rng));
  return out;
}

std::vector<std::vector<double>> Instance::real_samples(int count) const {
  Rng rng(mix_seed(spec_.seed, {kSaltSamples}));
  std::vector<std::vector<double>> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    std::vector<double> x(spec_.n);
    for (double& v : x) v = rng.gauss();
    out.push_back(std::move(x));
  }
  return out;
}

json Instance::to_json() const {
  json j;
  j["format"] = "wigmod-instance/1";
  j["kind"] = std::string(corrupted() ? "corrupted-" : "") + kind_name(spec_.kind);
  switch (spec_.kind) {
    case InstanceKind::module_unitary:
    case InstanceKind::module_antiunitary:
      j["d"] = spec_.d;
      j["m"] = spec_.m;
      break;
    case InstanceKind::cstar:
      j["d"] = spec_.d;
      break;
    case InstanceKind::real:
      j["n"] = spec_.n;
      break;
  }
  j["seed"] = spec_.seed;
  if (spec_.kind == InstanceKind::real)
    j["matrix"] = wigmod::to_json(rmat_);
  else
    j["matrix"] = wigmod::to_json(mat_);
  if (spec_.corruption) {
    const Corruption& c = *spec_.corruption;
    json cj;
    cj["epsilon"] = c.epsilon;
    cj["target"] = c.target ? json(*c.target) : json(nullptr);
    if (c.target) {
      if (spec_.kind == InstanceKind::real)
        cj["target_vec"] = c.target_vec;
      else
        cj["target_vec"] = wigmod::to_json(c.target_mat);
    } else {
      cj["target_vec"] = nullptr;
    }
    j["corruption"] = std::move(cj);
  } else {
    j["corruption"] = nullptr;
  }
  return j;
}

Instance Instance::from_json(const json& j) {
  if (!j.is_object() || j.value("format", "") != "wigmod-instance/1")
    fail(Errc::io_error, "not a wigmod instance file");
  InstanceSpec spec;
  bool corrupted = false;
  spec.kind = kind_from_name(j.at("kind").get<std::string>(), corrupted);
  spec.d = j.value("d", 1);
  spec.m = j.value("m", 1);
  spec.n = j.value("n", 1);
  spec.seed = j.at("seed").get<std::uint64_t>();
  if (corrupted != !j.at("corruption").is_null())
    fail(Errc::io_error, "corruption block does not match kind");

  Instance inst;
  inst.spec_ = spec;
  if (spec.kind == InstanceKind::real)
    inst.rmat_ = rmatrix_from_json(j.at("matrix"));
  else
    inst.mat_ = cmatrix_from_json(j.at("matrix"));

  if (spec.kind == InstanceKind::real) {
    if (inst.rmat_.rows() != spec.n || inst.rmat_.cols() != spec.n)
      fail(Errc::io_error, "stored matrix does not match n");
  } else {
    const int want = spec.kind == InstanceKind::cstar ? spec.d : spec.m;
    if (inst.mat_.rows() != want || inst.mat_.cols() != want)
      fail(Errc::io_error, "stored matrix does not match the spec size");
  }

  if (corrupted) {
    const json& cj = j.at("corruption");
    Corruption c;
    c.epsilon = cj.at("epsilon").get<double>();
    if (!cj.at("target").is_null()) {
      c.target = cj.at("target").get<int>();
      if (spec.kind == InstanceKind::real)
        c.target_vec = cj.at("target_vec").get<std::vector<double>>();
      else
        c.target_mat = cmatrix_from_json(cj.at("target_vec"));
    }
    inst.spec_.corruption = std::move(c);
  }
  return inst;
}

}  // namespace wigmod
