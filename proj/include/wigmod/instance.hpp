#pragma once

#include <optional>
#include <string>

#include "wigmod/companion.hpp"
#include "wigmod/serialize.hpp"
#include "wigmod/wigner.hpp"

namespace wigmod {

enum class InstanceKind { module_unitary, module_antiunitary, cstar, real };

const char* kind_name(InstanceKind k);
InstanceKind kind_from_name(const std::string& name, bool& corrupted);

/// Corruption wrapped around a valid instance. Noise mode (no target)
/// scales every output by 1 + epsilon * u(input) with u a hash of the
/// input in [-1, 1]; targeted mode scales by 1 + epsilon exactly on the
/// designated canonical verification sample.
struct Corruption {
  double epsilon = 0.0;
  std::optional<int> target;
  CMatrix target_mat;               // module/cstar target, when targeted
  std::vector<double> target_vec;   // real target, when targeted
};

struct InstanceSpec {
  InstanceKind kind = InstanceKind::module_unitary;
  int d = 1;
  int m = 1;
  int n = 1;
  std::uint64_t seed = 0;
  std::optional<Corruption> corruption;
};

/// A generated instance: the stored ground truth plus the pure oracle
/// it defines. Phase functions are hashes of the input's canonical
/// bytes, so evaluation is deterministic with nothing stored per input.
class Instance {
 public:
  static Instance generate(const InstanceSpec& spec);

  const InstanceSpec& spec() const { return spec_; }
  InstanceKind kind() const { return spec_.kind; }
  bool corrupted() const { return spec_.corruption.has_value(); }

  ModuleSpace module_space() const { return {spec_.d, spec_.m}; }

  /// The stored unitary (module: m x m right factor; cstar: U0 = Phi(I)).
  const CMatrix& matrix() const { return mat_; }
  const RMatrix& real_matrix() const { return rmat_; }

  TransformOracle module_oracle() const;
  CstarOracle cstar_oracle() const;
  RealOracle real_oracle() const;

  // Ground truth for round-trip tests (the uncorrupted instance).
  cplx true_module_phase(const ModVec& f) const;
  cplx true_cstar_phase(const CMatrix& a) const;
  double true_real_sign(const std::vector<double>& x) const;

  /// Canonical verification samples (seed-derived; targeted corruption
  /// designates one of these).
  std::vector<ModVec> module_samples(int count) const;
  std::vector<CMatrix> cstar_samples(int count) const;
  std::vector<std::vector<double>> real_samples(int count) const;

  json to_json() const;
  static Instance from_json(const json& j);

 private:
  InstanceSpec spec_;
  CMatrix mat_;
  RMatrix rmat_;

  double corruption_factor_cplx(const CMatrix& input) const;
  double corruption_factor_real(const std::vector<double>& input) const;
};

/// Validates the spec and builds the instance. Throws InvalidSpec on
/// kind/size incompatibilities (module-antiunitary needs d = 1, sizes
/// must be positive, corrupted kinds need epsilon > 0).
Instance gen_instance(const InstanceSpec& spec);

}  // namespace wigmod
