#include "wigmod/cli.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "wigmod/instance.hpp"
#include "wigmod/selftest.hpp"

namespace wigmod {

namespace {

struct ResidualRow {
  std::string name;
  double value;
  double limit;
};

// Pinned acceptance thresholds per instance kind; the RunReport verdict
// is pass iff verification passed and every row is within its limit.
std::vector<ResidualRow> residual_rows(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::module_unitary:
    case InstanceKind::module_antiunitary:
      return {{"welldef", 0.0, 1e-9},
              {"unitarity", 0.0, 1e-9},
              {"readoff", 0.0, 1e-9},
              {"uni", 0.0, 1e-9},
              {"reconstruction", 0.0, 1e-8}};
    case InstanceKind::cstar:
      return {{"unitarity", 0.0, 1e-10},
              {"reconstruction", 0.0, 1e-8},
              {"psi_welldef", 0.0, 1e-9},
              {"psi_identity_projection", 0.0, 1e-9},
              {"psi_identity_distance", 0.0, 1e-9}};
    case InstanceKind::real:
      return {{"orthogonality", 0.0, 1e-9},
              {"reconstruction", 0.0, 1e-10}};
  }
  return {};
}

void set_row(std::vector<ResidualRow>& rows, const std::string& name,
             double value) {
  for (auto& r : rows)
    if (r.name == name) r.value = value;
}

std::string fmt_sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

json rows_to_json(const std::vector<ResidualRow>& rows) {
  json j;
  for (const auto& r : rows)
    j[r.name] = json{{"value", r.value}, {"limit", r.limit}};
  return j;
}

void render_report(const json& rep, std::ostream& out) {
  out << "instance:      " << rep.at("instance").at("kind").get<std::string>();
  const json& inst = rep.at("instance");
  if (inst.contains("d")) out << "  d=" << inst.at("d").get<int>();
  if (inst.contains("m")) out << " m=" << inst.at("m").get<int>();
  if (inst.contains("n")) out << "  n=" << inst.at("n").get<int>();
  out << "  seed=" << inst.at("seed").get<std::uint64_t>() << "\n";
  const json& ver = rep.at("verification");
  out << "verification:  " << (ver.at("pass").get<bool>() ? "pass" : "FAIL")
      << "  (" << ver.at("pair_count").get<int>() << " pairs, max residual "
      << fmt_sci(ver.at("max_residual").get<double>()) << ", tol "
      << fmt_sci(ver.at("tol").get<double>()) << ")\n";
  if (!ver.at("offending").empty()) {
    out << "offending:     ";
    for (const auto& p : ver.at("offending"))
      out << "(" << p[0].get<int>() << "," << p[1].get<int>() << ") ";
    out << "\n";
  }
  if (rep.contains("residuals") && !rep.at("residuals").is_null()) {
    out << "residuals:\n";
    for (const auto& [name, rv] : rep.at("residuals").items())
      out << "  " << name << std::string(name.size() < 26 ? 26 - name.size() : 1, ' ')
          << fmt_sci(rv.at("value").get<double>()) << "  (limit "
          << fmt_sci(rv.at("limit").get<double>()) << ")\n";
  }
  if (!rep.at("error").is_null())
    out << "error:         " << rep.at("error").get<std::string>() << "\n";
  out << "verdict:       " << rep.at("verdict").get<std::string>() << "\n";
  if (rep.contains("wall_clock_ms"))
    out << "wall-clock:    " << fmt_sci(rep.at("wall_clock_ms").get<double>())
        << " ms\n";
}

VerificationReport run_verifier(const Instance& inst, int nsamples,
                                double tol) {
  switch (inst.kind()) {
    case InstanceKind::module_unitary:
    case InstanceKind::module_antiunitary:
      return verify_instance(inst.module_oracle(),
                             inst.module_samples(nsamples), tol);
    case InstanceKind::cstar:
      return cstar_verify(inst.cstar_oracle(), inst.cstar_samples(nsamples),
                          tol);
    case InstanceKind::real:
      return real_verify(inst.real_oracle(), inst.real_samples(nsamples), tol);
  }
  fail(Errc::invalid_spec, "unknown instance kind");
}

int cmd_gen(const std::string& kind, int d, int m, int n, std::uint64_t seed,
            double epsilon, const std::string& out_path, std::ostream& out) {
  InstanceSpec spec;
  bool corrupted = false;
  spec.kind = kind_from_name(kind, corrupted);
  spec.d = d;
  spec.m = m;
  spec.n = n;
  spec.seed = seed;
  if (corrupted) {
    spec.corruption = Corruption{epsilon, std::nullopt, {}, {}};
  } else if (epsilon != 0.0) {
    fail(Errc::invalid_spec, "--epsilon requires a corrupted-* kind");
  }
  const Instance inst = gen_instance(spec);
  write_text_file(out_path, inst.to_json().dump(2) + "\n");
  out << "wrote " << out_path << "\n";
  return 0;
}

int cmd_verify(const std::string& in_path, int nsamples, double tol,
               bool as_json, std::ostream& out) {
  const Instance inst = Instance::from_json(json::parse(read_text_file(in_path)));
  const VerificationReport rep = run_verifier(inst, nsamples, tol);
  if (as_json)
    out << to_json(rep).dump(2) << "\n";
  else
    out << "verification: " << (rep.pass ? "pass" : "FAIL") << "  ("
        << rep.pair_count << " pairs, max residual " << fmt_sci(rep.max_residual)
        << ", tol " << fmt_sci(rep.tol) << ")\n";
  return rep.pass ? 0 : 1;
}

int cmd_factorize(const std::string& in_path, const std::string& out_path,
                  int nsamples, double tol, bool as_json, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const Instance inst = Instance::from_json(json::parse(read_text_file(in_path)));

  json report;
  report["instance"] = inst.to_json();
  const VerificationReport ver = run_verifier(inst, nsamples, tol);
  report["verification"] = to_json(ver);

  std::vector<ResidualRow> rows = residual_rows(inst.kind());
  json fact_json;
  std::string error;

  bool engine_ok = false;
  if (ver.pass) {
    try {
      switch (inst.kind()) {
        case InstanceKind::module_unitary:
        case InstanceKind::module_antiunitary: {
          FactorizeOptions opts;
          opts.samples = nsamples;
          const WignerFactorization f = factorize(inst.module_oracle(), opts);
          fact_json = to_json(f);
          set_row(rows, "welldef", f.residuals.welldef);
          set_row(rows, "unitarity", f.residuals.unitarity);
          set_row(rows, "readoff", f.residuals.readoff);
          set_row(rows, "uni", f.residuals.uni);
          set_row(rows, "reconstruction", f.residuals.reconstruction);
          break;
        }
        case InstanceKind::cstar: {
          const CstarOracle phi = inst.cstar_oracle();
          const CstarFactorization f =
              cstar_factorize(phi, inst.cstar_samples(nsamples));
          const CstarPsiCheck pc = cstar_psi_check(phi);
          fact_json = to_json(f);
          set_row(rows, "unitarity", f.residuals.unitarity);
          set_row(rows, "reconstruction", f.residuals.reconstruction);
          set_row(rows, "psi_welldef", pc.welldef_residual);
          set_row(rows, "psi_identity_projection", pc.psi_identity_projection);
          set_row(rows, "psi_identity_distance", pc.psi_identity_distance);
          break;
        }
        case InstanceKind::real: {
          const RealFactorization f =
              real_factorize(inst.real_oracle(), inst.real_samples(nsamples));
          fact_json = to_json(f);
          set_row(rows, "orthogonality", f.residuals.orthogonality);
          set_row(rows, "reconstruction", f.residuals.reconstruction);
          break;
        }
      }
      engine_ok = true;
    } catch (const Error& e) {
      error = e.what();
    }
  } else {
    error = "verification failed: the instance violates the modulus condition";
  }

  bool verdict = ver.pass && engine_ok;
  for (const auto& r : rows)
    if (r.value > r.limit) verdict = false;

  report["factorization"] = engine_ok ? fact_json : json(nullptr);
  report["residuals"] = engine_ok ? rows_to_json(rows) : json(nullptr);
  report["verdict"] = verdict ? "pass" : "fail";
  report["error"] = error.empty() ? json(nullptr) : json(error);
  const auto t1 = std::chrono::steady_clock::now();
  report["wall_clock_ms"] =
      std::chrono::duration<double, std::milli>(t1 - t0).count();

  if (verdict && engine_ok && !out_path.empty())
    write_text_file(out_path, fact_json.dump(2) + "\n");
  if (!out_path.empty()) {
    // Run report lands next to the factorization either way; only a
    // passing run leaves the factorization itself behind.
    std::string rep_path = out_path;
    const std::size_t dot = rep_path.rfind(".json");
    if (dot != std::string::npos && dot == rep_path.size() - 5)
      rep_path.resize(dot);
    write_text_file(rep_path + ".report.json", report.dump(2) + "\n");
  }

  if (as_json)
    out << report.dump(2) << "\n";
  else
    render_report(report, out);
  return verdict ? 0 : 1;
}

int cmd_report(const std::string& in_path, std::ostream& out) {
  render_report(json::parse(read_text_file(in_path)), out);
  return 0;
}

int cmd_selftest(bool as_json, std::ostream& out, std::ostream& err) {
  const std::uint64_t seed = selftest_seed_from_env();
  const auto t0 = std::chrono::steady_clock::now();
  const SelftestReport rep = run_selftest(seed);
  const auto t1 = std::chrono::steady_clock::now();
  if (as_json) {
    json j;
    j["seed"] = rep.seed;
    json arr = json::array();
    for (const auto& c : rep.criteria)
      arr.push_back(json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    j["criteria"] = std::move(arr);
    j["pass"] = rep.all_pass;
    out << j.dump(2) << "\n";
  } else {
    out << rep.rendered;
  }
  err << "# selftest wall-clock: "
      << std::chrono::duration<double, std::milli>(t1 - t0).count() << " ms\n";
  return rep.all_pass ? 0 : 1;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Hilbert-module Wigner factorization toolkit"};
  app.require_subcommand(1);

  std::string kind, in_path, out_path;
  int d = 1, m = 1, n = 1, samples = 32;
  std::uint64_t seed = 0;
  double epsilon = 0.0, tol = 1e-8;
  bool as_json = false;

  CLI::App* gen = app.add_subcommand("gen", "generate an instance");
  gen->add_option("--kind", kind, "instance kind")->required();
  gen->add_option("--d", d, "coefficient algebra size");
  gen->add_option("--m", m, "modular dimension");
  gen->add_option("--n", n, "real dimension");
  gen->add_option("--seed", seed, "instance seed");
  gen->add_option("--epsilon", epsilon, "corruption strength");
  gen->add_option("--out", out_path, "output file")->required();

  CLI::App* verify = app.add_subcommand("verify", "check the modulus condition");
  verify->add_option("--in", in_path, "instance file")->required();
  verify->add_option("--samples", samples, "sample count")
      ->check(CLI::PositiveNumber);
  verify->add_option("--tol", tol, "verification tolerance")
      ->check(CLI::PositiveNumber);
  verify->add_flag("--json", as_json, "machine-readable report");

  CLI::App* fact = app.add_subcommand("factorize", "recover (U, phase)");
  fact->add_option("--in", in_path, "instance file")->required();
  fact->add_option("--out", out_path, "factorization output file");
  fact->add_option("--samples", samples, "sample count")
      ->check(CLI::PositiveNumber);
  fact->add_option("--tol", tol, "verification tolerance")
      ->check(CLI::PositiveNumber);
  fact->add_flag("--json", as_json, "machine-readable report");

  CLI::App* selftest = app.add_subcommand("selftest", "run the acceptance suite");
  selftest->add_flag("--json", as_json, "machine-readable report");

  CLI::App* report = app.add_subcommand("report", "pretty-print a run report");
  report->add_option("--in", in_path, "report file")->required();

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (gen->parsed()) return cmd_gen(kind, d, m, n, seed, epsilon, out_path, out);
    if (verify->parsed()) return cmd_verify(in_path, samples, tol, as_json, out);
    if (fact->parsed())
      return cmd_factorize(in_path, out_path, samples, tol, as_json, out);
    if (selftest->parsed()) return cmd_selftest(as_json, out, err);
    if (report->parsed()) return cmd_report(in_path, out);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return (e.code() == Errc::io_error || e.code() == Errc::invalid_spec) ? 2 : 1;
  } catch (const json::exception& e) {
    err << "IoError: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

int cli_main(const std::vector<std::string>& args) {
  return cli_main(args, std::cout, std::cerr);
}

}  // namespace wigmod
