#include "gpreal/cli.h"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "gpreal/feedback.h"
#include "gpreal/gpsets.h"
#include "gpreal/lyapcone.h"
#include "gpreal/prl.h"

namespace gpreal::cli {

using json_io::Json;

namespace {

// exit statuses
constexpr int kTrue = 0;
constexpr int kFalse = 1;
constexpr int kError = 2;

struct CommonOptions {
  std::string input;
  std::string inline_json;
  std::optional<double> tol;
  std::uint64_t seed = 1;
  std::string format = "json";
};

struct Options {
  CommonOptions common;
  std::string nu = "any";
  int samples = 200;
  std::vector<std::string> at;
  bool poly = false;
  double k_max = 1e6;
  std::string hermitian;
  int r = 3;
  int p = 1;
  int construct_nu = 1;
};

void AddCommon(CLI::App* cmd, CommonOptions& o, bool needs_input) {
  if (needs_input) {
    auto* in = cmd->add_option("--input", o.input, "realization JSON file");
    auto* inl = cmd->add_option("--inline", o.inline_json, "realization JSON text");
    in->excludes(inl);
  }
  cmd->add_option("--tol", o.tol, "tolerance override");
  cmd->add_option("--seed", o.seed, "random seed")->capture_default_str();
  cmd->add_option("--format", o.format, "json or text")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
}

Json LoadInput(const CommonOptions& o) {
  if (!o.inline_json.empty()) return json_io::Parse(o.inline_json, "--inline");
  if (o.input.empty()) throw std::invalid_argument("one of --input or --inline is required");
  std::ifstream file(o.input);
  if (!file) throw std::invalid_argument("cannot open " + o.input);
  std::stringstream buffer;
  buffer << file.rdbuf();
  return json_io::Parse(buffer.str(), o.input);
}

Json OptionalTol(const std::optional<double>& tol) {
  return tol ? Json(*tol) : Json("default");
}

Json CertificateToJson(const LyapunovCertificate& cert) {
  return Json{
      {"Hhat", json_io::MatrixToJson(cert.Hhat)},
      {"nu", cert.nu},
      {"q_min_eigenvalue", cert.min_eigenvalue},
      {"tolerance_used", cert.tolerance_used},
      {"pole_bounds", Json{{"neg", cert.pole_bound_neg}, {"pos", cert.pole_bound_pos}}},
      {"positive", cert.positive},
  };
}

Complex ParsePoint(const std::string& text) {
  std::stringstream ss(text);
  std::string re_part, im_part;
  std::getline(ss, re_part, ',');
  std::getline(ss, im_part);
  try {
    size_t used = 0;
    const double re = std::stod(re_part, &used);
    if (used != re_part.size()) throw std::invalid_argument("trailing");
    double im = 0.0;
    if (!im_part.empty()) {
      im = std::stod(im_part, &used);
      if (used != im_part.size()) throw std::invalid_argument("trailing");
    }
    return {re, im};
  } catch (const std::exception&) {
    throw std::invalid_argument("--at expects \"re,im\", got \"" + text + "\"");
  }
}

std::optional<int> ParseNu(const std::string& text) {
  if (text == "any") return std::nullopt;
  try {
    size_t used = 0;
    const int nu = std::stoi(text, &used);
    if (used == text.size()) return nu;
  } catch (const std::exception&) {
  }
  throw std::invalid_argument("--nu expects an integer or \"any\"");
}

ComplexMatrix HermitianArgument(const Options& o, const Json& input) {
  if (!o.hermitian.empty()) return json_io::ParseMatrix(json_io::Parse(o.hermitian, "--hermitian"), "H");
  if (input.contains("H")) return json_io::ParseMatrix(input["H"], "H");
  return ComplexMatrix();
}

int CmdTf(const Options& o, Json& out) {
  const SystemMatrix sys = json_io::ParseSystem(LoadInput(o.common));
  const Realization re = Partition(sys);
  if (o.poly || o.at.empty()) {
    if (re.ports() != 1) throw std::invalid_argument("--poly requires p = 1");
    const ScalarRational f = ToScalarRational(re);
    out["num"] = json_io::PolynomialToJson(f.numerator);
    out["den"] = json_io::PolynomialToJson(f.denominator);
  }
  if (!o.at.empty()) {
    Json points = Json::array();
    for (const auto& text : o.at) {
      const Complex s = ParsePoint(text);
      points.push_back(Json{{"s", Json::array({s.real(), s.imag()})},
                            {"value", json_io::MatrixToJson(Evaluate(re, s))}});
    }
    out["points"] = points;
  }
  return kTrue;
}

int CmdCheckGp(const Options& o, Json& out) {
  const Realization re = Partition(json_io::ParseSystem(LoadInput(o.common)));
  const double tol = o.common.tol.value_or(1e-7);
  const BoundaryReport report = BoundaryOracle(re, o.samples, tol);
  out["is_gp"] = report.is_gp;
  out["vacuous"] = report.vacuous;
  out["min_eigenvalue"] = report.min_eigenvalue;
  out["argmin_omega"] = report.argmin_omega;
  out["samples_used"] = report.profile.omegas.size();
  out["excluded"] = json_io::RealsToJson(report.profile.excluded);
  for (size_t i = 0; i < report.profile.omegas.size(); ++i) {
    if (report.profile.omegas[i] == 0.0) out["value_at_zero"] = report.profile.min_eigs[i];
  }
  out["options"] = Json{{"samples", o.samples}, {"tol", tol}};
  return report.is_gp ? kTrue : kFalse;
}

int CmdCertify(const Options& o, Json& out) {
  const Realization re = Partition(json_io::ParseSystem(LoadInput(o.common)));
  CertificateSearchOptions search;
  search.target_nu = ParseNu(o.nu);
  search.tol = o.common.tol;
  search.seed = o.common.seed;
  const CertificateSearch result = FindCertificate(re, search);
  out["found"] = result.found();
  if (result.found()) {
    out["certificate"] = CertificateToJson(result.certificate);
    out["method"] = result.method;
    out["perturbation_based"] = result.perturbation_based;
    out["perturbation"] = result.perturbation;
  } else {
    out["best_min_eigenvalue"] = result.best_min_eigenvalue;
    out["best_Hhat"] = json_io::MatrixToJson(result.best_hhat);
  }
  out["options"] = Json{{"nu", o.nu}, {"seed", o.common.seed}, {"tol", OptionalTol(o.common.tol)}};
  return result.found() ? kTrue : kFalse;
}

int CmdMember(const Options& o, Json& out) {
  const Json input = LoadInput(o.common);
  const SystemMatrix sys = json_io::ParseSystem(input);
  const ComplexMatrix h = HermitianArgument(o, input);
  if (h.size() == 0) throw std::invalid_argument("member needs H (input key \"H\" or --hermitian)");
  const ConeMembership m = Member(sys.L, h, o.common.tol);
  out["status"] = ToString(m.status);
  out["min_eigenvalue"] = m.min_eigenvalue;
  out["tolerance_used"] = m.tolerance_used;
  out["Q"] = json_io::MatrixToJson(m.Q);
  return m.IsMember() ? kTrue : kFalse;
}

int CmdClassify(const Options& o, Json& out) {
  const SystemMatrix sys = json_io::ParseSystem(LoadInput(o.common));
  ClassifyOptions options;
  options.tol = o.common.tol;
  options.seed = o.common.seed;
  const ClassificationReport report = Classify(sys, options);
  Json memberships = Json::array();
  for (const auto& m : report.memberships) {
    memberships.push_back(Json{{"class", Json::array({m.cls.r, m.cls.nu, m.cls.p})},
                               {"certificate", CertificateToJson(m.certificate)}});
  }
  out["memberships"] = memberships;
  out["minimal"] = report.minimal;
  out["mcmillan"] = report.mcmillan;
  out["rank_tolerance"] = report.rank_tolerance;
  out["options"] = Json{{"seed", o.common.seed}, {"tol", OptionalTol(o.common.tol)}};
  return report.memberships.empty() ? kFalse : kTrue;
}

int CmdConstruct(const Options& o, Json& out) {
  const GpClass cls{o.r, o.construct_nu, o.p};
  const SystemMatrix sys = Construct(cls, o.common.seed);
  const int n = sys.states();
  const CertificateCheck check =
      CheckCertificate(Partition(sys), Signature(cls.nu, n), o.common.tol);
  out["L"] = json_io::MatrixToJson(sys.L);
  out["p"] = sys.p;
  out["certified"] = check.accepted;
  out["certificate"] = CertificateToJson(check.certificate);
  out["options"] = Json{{"r", o.r}, {"nu", o.construct_nu}, {"p", o.p}, {"seed", o.common.seed}};
  return check.accepted ? kTrue : kFalse;
}

int CmdFeedback(const Options& o, Json& out) {
  const Json input = LoadInput(o.common);
  const FeedbackProblem fp = FromSystemMatrix(json_io::ParseSystem(input));
  const double tol = o.common.tol.value_or(1e-9);
  ComplexMatrix hhat = HermitianArgument(o, input);
  out["options"] = Json{{"k_max", o.k_max}, {"tol", tol}, {"seed", o.common.seed}};
  if (hhat.size() == 0) {
    FeedbackHOptions h_options;
    h_options.tol = tol;
    h_options.seed = o.common.seed;
    const FeedbackHResult found = FindFeedbackH(fp, h_options);
    out["search"] = ToString(found.status);
    if (!found.found()) {
      out["feasible"] = false;
      if (found.status == FeedbackHStatus::infeasible_cond_b) {
        out["best_min_eigenvalue"] = found.best_min_eigenvalue;
      }
      return kFalse;
    }
    hhat = found.Hhat;
  }
  const FeedbackConditions cond = CheckConditions(fp, hhat, tol);
  out["Hhat"] = json_io::MatrixToJson(hhat);
  out["cond_a"] = cond.cond_a;
  out["cond_b"] = cond.cond_b;
  out["cond_b_min_eigenvalue"] = cond.min_eigenvalue_b;
  if (!cond.cond_a || !cond.cond_b) {
    out["feasible"] = false;
    return kFalse;
  }
  SynthesisOptions s_options;
  s_options.tol = tol;
  s_options.k_max = o.k_max;
  const FeedbackCertificate cert = SynthesizeK(fp, hhat, s_options);
  out["feasible"] = cert.feasible;
  out["kappa"] = cert.kappa;
  out["K"] = json_io::MatrixToJson(cert.K);
  out["bisection_steps"] = cert.trace.size();
  out["monotone"] = cert.monotone;
  if (cert.feasible) {
    out["closed_loop"] = json_io::MatrixToJson(Assemble(cert.closed_loop).L);
    out["certificate"] = CertificateToJson(cert.certificate);
  }
  return cert.feasible ? kTrue : kFalse;
}

int CmdDemo(Json& out) {
  const std::vector<DemoCheck> checks = RunDemo();
  out = DemoToJson(checks);
  return out["passed"].get<bool>() ? kTrue : kFalse;
}

void WriteText(std::ostream& os, const Json& j) {
  if (j.contains("checks")) {
    for (const auto& c : j["checks"]) {
      os << c["status"].get<std::string>() << "  " << c["name"].get<std::string>();
      if (!c["detail"].get<std::string>().empty()) os << "  (" << c["detail"].get<std::string>() << ")";
      os << "\n";
    }
    os << "passed: " << (j["passed"].get<bool>() ? "true" : "false") << "\n";
    return;
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    os << it.key() << ": " << json_io::Dump(it.value(), 0) << "\n";
  }
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Positive real lemma tools for generalized positive rational functions"};
  app.require_subcommand(1);
  Options o;

  auto* tf = app.add_subcommand("tf", "transfer function values or polynomials");
  AddCommon(tf, o.common, true);
  tf->add_option("--at", o.at, "evaluation point \"re,im\" (repeatable)");
  tf->add_flag("--poly", o.poly, "numerator and denominator coefficients, ascending (p = 1)");

  auto* check = app.add_subcommand("check-gp", "boundary sampling of F(iw) + F(iw)*");
  AddCommon(check, o.common, true);
  check->add_option("--samples", o.samples, "grid size")->capture_default_str();

  auto* certify = app.add_subcommand("certify", "search for a Lyapunov certificate");
  AddCommon(certify, o.common, true);
  certify->add_option("--nu", o.nu, "inertia target: integer or any")->capture_default_str();

  auto* member = app.add_subcommand("member", "membership of L in the cone of H");
  AddCommon(member, o.common, true);
  member->add_option("--hermitian", o.hermitian, "H as a JSON matrix (else input key \"H\")");

  auto* classify = app.add_subcommand("classify", "all certifiable classes (r, nu, p)");
  AddCommon(classify, o.common, true);

  auto* construct = app.add_subcommand("construct", "random realization in a class");
  AddCommon(construct, o.common, false);
  construct->add_option("--r", o.r, "system matrix size")->capture_default_str();
  construct->add_option("--nu", o.construct_nu, "negative inertia of Hhat")->capture_default_str();
  construct->add_option("--p", o.p, "ports")->capture_default_str();

  auto* feedback = app.add_subcommand("feedback", "static output feedback synthesis (D = 0)");
  AddCommon(feedback, o.common, true);
  feedback->add_option("--hermitian", o.hermitian, "fixed Hhat as a JSON matrix");
  feedback->add_option("--k-max", o.k_max, "bisection bound")->capture_default_str();

  auto* demo = app.add_subcommand("demo", "regression run over the built-in examples");
  demo->add_option("--format", o.common.format, "json or text")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kTrue;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }

  Json result = Json::object();
  int code = kError;
  try {
    if (tf->parsed()) code = CmdTf(o, result);
    else if (check->parsed()) code = CmdCheckGp(o, result);
    else if (certify->parsed()) code = CmdCertify(o, result);
    else if (member->parsed()) code = CmdMember(o, result);
    else if (classify->parsed()) code = CmdClassify(o, result);
    else if (construct->parsed()) code = CmdConstruct(o, result);
    else if (feedback->parsed()) code = CmdFeedback(o, result);
    else if (demo->parsed()) code = CmdDemo(result);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
  if (o.common.format == "text") {
    WriteText(out, result);
  } else {
    out << json_io::Dump(result) << "\n";
  }
  return code;
}

}  // namespace gpreal::cli
