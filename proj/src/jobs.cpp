#include "multcalc/jobs.hpp"

#include "multcalc/random.hpp"
#include "multcalc/tangent.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace multcalc {

std::string to_string(JobStatus s) {
  switch (s) {
    case JobStatus::pass: return "pass";
    case JobStatus::fail: return "fail";
    case JobStatus::non_convergent: return "non-convergent";
  }
  return "fail";
}

int exit_code(JobStatus s) {
  switch (s) {
    case JobStatus::pass: return 0;
    case JobStatus::fail: return 1;
    case JobStatus::non_convergent: return 2;
  }
  return 1;
}

namespace {

constexpr double kFloor = 1e-12;

struct Ctx {
  const json& spec;
  const RunOptions& opts;

  bool exact() const { return opts.rational || spec.value("exact", false); }
  std::uint64_t seed() const {
    if (opts.seed) return *opts.seed;
    return spec.contains("seed") ? spec.at("seed").get<std::uint64_t>() : 1;
  }
  double tol(double fallback) const {
    if (opts.tol) return *opts.tol;
    return spec.contains("tol") ? spec.at("tol").get<double>() : fallback;
  }
  int samples(int fallback) const {
    const int n = spec.value("samples", fallback);
    if (n < 1 || n > 100000) throw SpecError("samples must be in [1, 100000]");
    return n;
  }
  std::string str(const char* key, const std::string& fallback) const { return spec.value(key, fallback); }
};

JobStatus status_from(bool ok, bool converged = true) {
  if (ok) return JobStatus::pass;
  return converged ? JobStatus::fail : JobStatus::non_convergent;
}

Schedule parse_schedule(const json& spec, Schedule fallback = {}) {
  if (!spec.contains("schedule")) return fallback;
  const json& j = spec.at("schedule");
  require_known_fields(j, {"kmin", "kmax", "tol", "decay"}, "schedule");
  Schedule s = fallback;
  s.kmin = j.value("kmin", s.kmin);
  s.kmax = j.value("kmax", s.kmax);
  s.tol = j.value("tol", s.tol);
  s.decay = j.value("decay", s.decay);
  try {
    s.validate();
  } catch (const DomainError& e) {
    throw SpecError(e.what());
  }
  return s;
}

SampleRule parse_rule(const std::string& s) {
  if (s == "right") return SampleRule::right;
  if (s == "left") return SampleRule::left;
  if (s == "midpoint") return SampleRule::midpoint;
  throw SpecError("unknown sample rule: " + s);
}

PairWeightFamily parse_family(const json& spec, PairWeightFamily fallback) {
  if (!spec.contains("family")) return fallback;
  const json& j = spec.at("family");
  if (j.is_string()) {
    const auto kind = parse_pair_weight_kind(j.get<std::string>());
    if (!kind) throw SpecError("unknown family: " + j.get<std::string>());
    PairWeightFamily f;
    f.kind = *kind;
    return f;
  }
  require_known_fields(j, {"kind", "lambda", "table_l", "table_h", "domain"}, "family");
  const auto kind = parse_pair_weight_kind(j.at("kind").get<std::string>());
  if (!kind) throw SpecError("unknown family kind");
  if (*kind == PairWeightKind::custom_table)
    return PairWeightFamily::custom_table(j.at("table_l").get<std::array<int, 6>>(),
                                          j.at("table_h").get<std::array<int, 6>>(),
                                          j.value("domain", std::vector<int>{}));
  PairWeightFamily f;
  f.kind = *kind;
  f.lambda = j.value("lambda", 1.0);
  return f;
}

PolyPath<double> default_path() {
  return PolyPath<double>(3, {heis(1.0, 0.0, 0.0), heis(0.0, 1.0, 0.0)});
}

template <class S>
PolyPath<S> get_path(const json& spec, const char* key) {
  if (!spec.contains(key)) throw SpecError(std::string("missing field '") + key + "'");
  return path_from_json<S>(spec.at(key));
}

template <class S>
S get_scalar(const json& spec, const char* key, double fallback) {
  return spec.contains(key) ? scalar_from_json<S>(spec.at(key)) : S(fallback);
}

json elem_json(const Perm3& p) { return p.image; }
template <class S>
json elem_json(const Unipotent<S>& g) {
  return matrix_to_json(g.matrix());
}
template <class S>
json elem_json(const NilMat<S>& g) {
  return matrix_to_json(g.matrix());
}
template <class B>
json elem_json(const SeqElt<B>& s) {
  json a = json::array();
  for (const B& x : s.entries()) a.push_back(elem_json(x));
  return a;
}

/// Worst residual over a batch plus the first violating pair.
struct Batch {
  double max = 0.0;
  bool all_exact = true;
  int count = 0;
  json witness;

  template <class A, class B>
  void add(const Residual& r, const A& a, const B& b, double tol) {
    ++count;
    max = std::max(max, r.distance);
    all_exact = all_exact && r.exact;
    if (witness.is_null() && r.distance > tol)
      witness = {{"a", elem_json(a)}, {"b", elem_json(b)}, {"residual", residual_to_json(r)}};
  }

  bool ok(bool exact, double tol) const { return exact ? all_exact : max <= tol; }

  json to_json() const {
    json j = {{"samples", count}, {"max_residual", number_to_json(max)}, {"all_exact", all_exact}};
    if (!witness.is_null()) j["witness"] = witness;
    return j;
  }
};

const std::initializer_list<const char*> kCommon = {"op", "name", "expect", "seed", "tol", "exact"};

void require_fields(const json& spec, std::initializer_list<const char*> extra, const std::string& where) {
  std::vector<const char*> all(kCommon.begin(), kCommon.end());
  all.insert(all.end(), extra.begin(), extra.end());
  std::set<std::string> ok(all.begin(), all.end());
  for (auto it = spec.begin(); it != spec.end(); ++it)
    if (!ok.count(it.key())) throw SpecError(where + ": unknown field '" + it.key() + "'");
}

// --- integrate / derive -------------------------------------------------------

template <class S>
json closed_integral(const json& spec) {
  const PolyPath<S> u = spec.contains("path") ? get_path<S>(spec, "path") : PolyPath<S>(3);
  return matrix_to_json(product_integral_closed_nilpotent(u, get_scalar<S>(spec, "x", 1.0)).matrix());
}

template <class S>
json closed_derivative(const json& spec) {
  const PolyPath<S> u = get_path<S>(spec, "path");
  return matrix_to_json(mult_derivative_closed(u, get_scalar<S>(spec, "x", 1.0)).matrix());
}

JobResult op_integrate(const Ctx& c) {
  require_fields(c.spec, {"path", "x", "mode", "schedule", "rule", "family"}, "integrate");
  JobResult r;
  const std::string mode = c.str("mode", "closed");
  if (mode == "closed") {
    r.report["value"] = c.exact() ? closed_integral<Rational>(c.spec) : closed_integral<double>(c.spec);
    r.status = JobStatus::pass;
    return r;
  }
  if (mode != "numeric") throw SpecError("integrate: mode must be closed or numeric");
  const PolyPath<double> u = get_path<double>(c.spec, "path");
  const double x = get_scalar<double>(c.spec, "x", 1.0);
  const Schedule sch = parse_schedule(c.spec);
  const PairWeightFamily fam = parse_family(c.spec, PairWeightFamily::power(1.0));
  const std::function<Unipotent<double>(double)> a = [&](double t) { return exp_nilpotent(u(t)); };
  const ConvergenceReport rep =
      product_integral_numeric<Unipotent<double>>(a, fam, 0.0, x, sch, parse_rule(c.str("rule", "right")));
  r.report["report"] = report_to_json(rep);
  r.tables.emplace_back("integrate", rep);
  const double tol = c.tol(sch.tol);
  if (u.dim() != 3) {
    r.status = status_from(rep.converged);
    return r;
  }
  const MatD closed = product_integral_closed_nilpotent(u, x).matrix();
  std::vector<double> errors;
  for (const MatD& v : rep.values) errors.push_back(frobenius_distance(v, closed));
  const double order = mean_log2_ratio(errors, 3);
  const bool order_ok = errors.back() <= kFloor || (order >= 0.75 && order <= 1.25);
  r.report["closed"] = matrix_to_json(closed);
  r.report["final_error"] = number_to_json(errors.back());
  r.report["extrapolated_error"] = number_to_json(frobenius_distance(rep.extrapolated, closed));
  r.report["error_order"] = number_to_json(order);
  r.status = status_from(errors.back() <= tol && order_ok, rep.converged);
  return r;
}

JobResult op_derive(const Ctx& c) {
  require_fields(c.spec, {"path", "x", "mode", "schedule", "family"}, "derive");
  JobResult r;
  const std::string mode = c.str("mode", "closed");
  if (mode == "closed") {
    r.report["value"] = c.exact() ? closed_derivative<Rational>(c.spec) : closed_derivative<double>(c.spec);
    r.status = JobStatus::pass;
    return r;
  }
  if (mode != "numeric") throw SpecError("derive: mode must be closed or numeric");
  const PolyPath<double> u = get_path<double>(c.spec, "path");
  const double x = get_scalar<double>(c.spec, "x", 1.0);
  const Schedule sch = parse_schedule(c.spec);
  const PairWeightFamily fam = parse_family(c.spec, PairWeightFamily::power(1.0));
  const std::function<Unipotent<double>(double)> a = [&](double t) { return exp_nilpotent(u(t)); };
  const ConvergenceReport rep = mult_derivative_numeric<Unipotent<double>>(a, fam, x, sch);
  r.report["report"] = report_to_json(rep);
  r.tables.emplace_back("derive", rep);
  const double tol = c.tol(sch.tol);
  if (u.dim() != 3) {
    r.status = status_from(rep.converged);
    return r;
  }
  const MatD closed = mult_derivative_closed(u, x).matrix();
  const double err = frobenius_distance(rep.extrapolated, closed);
  r.report["closed"] = matrix_to_json(closed);
  r.report["extrapolated_error"] = number_to_json(err);
  r.status = status_from(err <= tol, rep.converged);
  return r;
}

// --- ftc / ibp / leibniz --------------------------------------------------------

template <class S>
JobResult ftc_impl(const Ctx& c) {
  JobResult r;
  const double tol = c.tol(kFloor);
  if (c.spec.contains("samples")) {
    SplitMix64 rng(c.seed());
    const int degree = c.spec.value("degree", 3);
    double m1 = 0.0, m2 = 0.0, m3 = 0.0;
    bool exact = true;
    const int n = c.samples(50);
    for (int k = 0; k < n; ++k) {
      const PolyPath<S> u = random_path<S>(rng, degree);
      const FtcResidual f = ftc_check(u, random_scalar<S>(rng));
      m1 = std::max(m1, f.derivative_of_integral);
      m2 = std::max(m2, f.integral_of_derivative);
      m3 = std::max(m3, f.integral_of_derivative_literal);
      exact = exact && f.exact;
    }
    r.report["samples"] = n;
    r.report["max_derivative_of_integral"] = number_to_json(m1);
    r.report["max_integral_of_derivative"] = number_to_json(m2);
    r.report["max_integral_of_derivative_literal"] = number_to_json(m3);
    r.report["all_exact"] = exact;
    r.status = status_from(c.exact() ? exact : std::max(m1, m2) <= tol);
    return r;
  }
  const PolyPath<S> u = get_path<S>(c.spec, "path");
  const FtcResidual f = ftc_check(u, get_scalar<S>(c.spec, "x", 1.0));
  r.report["residuals"] = {number_to_json(f.derivative_of_integral), number_to_json(f.integral_of_derivative)};
  r.report["literal_residual"] = number_to_json(f.integral_of_derivative_literal);
  r.report["exact"] = f.exact;
  r.status = status_from(c.exact() ? f.exact : std::max(f.derivative_of_integral, f.integral_of_derivative) <= tol);
  return r;
}

JobResult op_ftc(const Ctx& c) {
  require_fields(c.spec, {"path", "x", "samples", "degree", "mode"}, "ftc");
  if (c.str("mode", "closed") != "closed") throw SpecError("ftc: only closed mode exists");
  return c.exact() ? ftc_impl<Rational>(c) : ftc_impl<double>(c);
}

template <class S, class Check>
JobResult pair_check_impl(const Ctx& c, Check check, int default_degree) {
  JobResult r;
  const double tol = c.tol(kFloor);
  Batch batch;
  if (c.spec.contains("samples")) {
    SplitMix64 rng(c.seed());
    const int degree = c.spec.value("degree", default_degree);
    const int n = c.samples(200);
    for (int k = 0; k < n; ++k) {
      const PolyPath<S> a = random_path<S>(rng, degree);
      const PolyPath<S> b = random_path<S>(rng, degree);
      const S x = random_scalar<S>(rng);
      const Residual res = check(a, b, x);
      if (batch.witness.is_null() && res.distance > tol)
        batch.witness = {{"a", path_to_json(a)}, {"b", path_to_json(b)}, {"residual", residual_to_json(res)}};
      batch.count++;
      batch.max = std::max(batch.max, res.distance);
      batch.all_exact = batch.all_exact && res.exact;
    }
    r.report = batch.to_json();
    r.status = status_from(batch.ok(c.exact(), tol));
    return r;
  }
  const PolyPath<S> a = get_path<S>(c.spec, "path");
  const PolyPath<S> b = get_path<S>(c.spec, "path_b");
  const Residual res = check(a, b, get_scalar<S>(c.spec, "x", 1.0));
  r.report["residual"] = residual_to_json(res);
  r.status = status_from(c.exact() ? res.exact : res.distance <= tol);
  return r;
}

JobResult op_ibp(const Ctx& c) {
  require_fields(c.spec, {"path", "path_b", "x", "mode", "schedule", "samples", "degree"}, "ibp");
  const std::string mode = c.str("mode", "closed");
  if (mode == "numeric") {
    const Schedule sch = parse_schedule(c.spec);
    const IbpNumericResult res = ibp_check_numeric(get_path<double>(c.spec, "path"), get_path<double>(c.spec, "path_b"),
                                                   get_scalar<double>(c.spec, "x", 1.0), sch);
    JobResult r;
    r.report["lhs"] = report_to_json(res.lhs);
    r.report["rhs"] = report_to_json(res.rhs);
    const double final_residual = frobenius_distance(res.lhs.last(), res.rhs.last());
    r.report["final_residual"] = number_to_json(final_residual);
    r.report["extrapolated_residual"] = number_to_json(res.residual);
    r.tables = {{"ibp-lhs", res.lhs}, {"ibp-rhs", res.rhs}};
    r.status = status_from(res.residual <= c.tol(1e-4), res.lhs.converged && res.rhs.converged);
    return r;
  }
  if (mode != "closed") throw SpecError("ibp: mode must be closed or numeric");
  if (c.exact())
    return pair_check_impl<Rational>(
        c, [](const auto& a, const auto& b, const auto& x) { return ibp_check_closed(a, b, x); }, 2);
  return pair_check_impl<double>(
      c, [](const auto& a, const auto& b, const auto& x) { return ibp_check_closed(a, b, x); }, 2);
}

JobResult op_leibniz(const Ctx& c) {
  require_fields(c.spec, {"path", "path_b", "x", "mode", "samples", "degree"}, "leibniz");
  if (c.str("mode", "closed") != "closed") throw SpecError("leibniz: only closed mode exists");
  if (c.exact())
    return pair_check_impl<Rational>(
        c, [](const auto& a, const auto& b, const auto& x) { return leibniz_check(a, b, x); }, 2);
  return pair_check_impl<double>(
      c, [](const auto& a, const auto& b, const auto& x) { return leibniz_check(a, b, x); }, 2);
}

// --- trotter ------------------------------------------------------------------------

struct TrotterSummary {
  TrotterResult res;
  std::vector<double> ratios;
  bool ratios_ok = true;
};

TrotterSummary summarize_trotter(const MatD& x, const MatD& y, const Schedule& sch, int ratio_from) {
  TrotterSummary s;
  s.res = trotter_mul(x, y, sch);
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, s.res.target.norm());
  bool all_tiny = true;
  for (std::size_t k = 0; k < s.res.errors.size(); ++k) all_tiny = all_tiny && s.res.errors[k] <= floor;
  for (std::size_t k = 0; k + 1 < s.res.errors.size(); ++k) {
    if (s.res.report.ns[k] < (std::int64_t{1} << ratio_from)) continue;
    const double ratio = s.res.errors[k] / s.res.errors[k + 1];
    s.ratios.push_back(ratio);
    if (!(ratio >= 1.5 && ratio <= 2.5)) s.ratios_ok = false;
  }
  if (all_tiny) s.ratios_ok = true;
  return s;
}

json trotter_json(const TrotterSummary& s) {
  json errs = json::array();
  for (double e : s.res.errors) errs.push_back(number_to_json(e));
  json ratios = json::array();
  for (double e : s.ratios) ratios.push_back(number_to_json(e));
  return {{"errors", errs},
          {"halving_ratios", ratios},
          {"ratios_ok", s.ratios_ok},
          {"extrapolated_error", number_to_json(s.res.extrapolated_error)},
          {"order", number_to_json(s.res.report.order)}};
}

JobResult op_trotter(const Ctx& c) {
  require_fields(c.spec, {"x", "y", "schedule", "samples", "ratio_from"}, "trotter");
  const Schedule sch = parse_schedule(c.spec);
  const int ratio_from = c.spec.value("ratio_from", 6);
  if (ratio_from < sch.kmin || ratio_from >= sch.kmax) throw SpecError("trotter: ratio_from outside the schedule");
  JobResult r;
  if (c.spec.contains("samples")) {
    SplitMix64 rng(c.seed());
    const int n = c.samples(20);
    bool ok = true;
    double worst_ratio_dev = 0.0;
    json cases = json::array();
    for (int k = 0; k < n; ++k) {
      const int dim = rng.uniform_int(2, 3);
      const MatD x = random_dense(rng, dim, rng.uniform(0.5, 2.0));
      const MatD y = random_dense(rng, dim, rng.uniform(0.5, 2.0));
      const TrotterSummary s = summarize_trotter(x, y, sch, ratio_from);
      ok = ok && s.ratios_ok;
      for (double q : s.ratios) worst_ratio_dev = std::max(worst_ratio_dev, std::abs(q - 2.0));
      json e = trotter_json(s);
      e["dim"] = dim;
      cases.push_back(e);
    }
    r.report["samples"] = n;
    r.report["cases"] = cases;
    r.report["max_ratio_deviation"] = number_to_json(worst_ratio_dev);
    r.status = status_from(ok);
    return r;
  }
  const MatD x = matrix_from_json<double>(c.spec.at("x"));
  const MatD y = matrix_from_json<double>(c.spec.at("y"));
  const TrotterSummary s = summarize_trotter(x, y, sch, ratio_from);
  r.report = trotter_json(s);
  r.report["report"] = report_to_json(s.res.report);
  r.report["target"] = matrix_to_json(s.res.target);
  r.tables.emplace_back("trotter", s.res.report);
  r.status = status_from(s.ratios_ok && s.res.extrapolated_error <= c.tol(sch.tol), s.res.report.converged);
  return r;
}

// --- verify-rb ----------------------------------------------------------------------

template <class S>
GroupOperator<Unipotent<S>> heisenberg_operator(const std::string& name, const PairWeightFamily& fam) {
  if (name == "factorization-heisenberg") return heisenberg_factorization_operator<S>();
  if (name == "induced-factorization-heisenberg") return induced_operator(heisenberg_factorization_operator<S>(), fam);
  if (name == "inverse-heisenberg") return inverse_operator<Unipotent<S>>();
  if (name == "rb0-center") return rb_zero_closed_form(LieOperator<S>::projection_to_center());
  if (name == "rb0-negate-first") return rb_zero_closed_form(LieOperator<S>::negate_first());
  throw SpecError("unknown Heisenberg operator: " + name);
}

bool is_heisenberg_operator(const std::string& name) {
  return name == "factorization-heisenberg" || name == "induced-factorization-heisenberg" ||
         name == "inverse-heisenberg" || name == "rb0-center" || name == "rb0-negate-first";
}

GroupOperator<Perm3> s3_operator(const json& op, const PairWeightFamily& fam) {
  if (op.is_object()) {
    require_known_fields(op, {"table"}, "operator");
    return table_operator(op.at("table").get<std::array<int, 6>>());
  }
  const std::string name = op.get<std::string>();
  if (name == "factorization-s3") return s3_factorization_operator();
  if (name == "induced-factorization-s3") return induced_operator(s3_factorization_operator(), fam);
  if (name == "inverse-s3") return inverse_operator<Perm3>();
  throw SpecError("unknown S3 operator: " + name);
}

template <class G, class Gen>
Batch group_batch(const Ctx& c, const std::string& kind, const GroupOperator<G>& op, const PairWeightFamily& fam,
                  Gen gen, double tol) {
  SplitMix64 rng(c.seed());
  Batch batch;
  const int n = c.samples(1000);
  for (int k = 0; k < n; ++k) {
    const G a = gen(rng);
    const G b = gen(rng);
    const Residual res = kind == "weight1" ? rb_weight1_residual(op, a, b) : rb_pair_residual(op, fam, a, b);
    batch.add(res, a, b, tol);
  }
  return batch;
}

template <class S>
JobResult verify_rb_heisenberg(const Ctx& c, const std::string& kind, const std::string& name,
                               const PairWeightFamily& fam, double tol) {
  const auto op = heisenberg_operator<S>(name, fam);
  JobResult r;
  Batch batch;
  if (kind == "weight1" || kind == "pair") {
    batch = group_batch<Unipotent<S>>(c, kind, op, fam, [](SplitMix64& g) { return random_unipotent<S>(g); }, tol);
  } else if (kind == "rboze") {
    SplitMix64 rng(c.seed());
    const int n = c.samples(200);
    for (int k = 0; k < n; ++k) {
      const NilMat<S> u = random_nil<S>(rng);
      const NilMat<S> v = random_nil<S>(rng);
      batch.add(rboze_finite_residual(op, u, v), u, v, tol);
    }
  } else {
    throw SpecError("verify-rb: kind " + kind + " does not apply to " + name);
  }
  r.report = batch.to_json();
  r.report["operator"] = op.name;
  r.status = status_from(batch.ok(c.exact(), tol));
  return r;
}

JobResult verify_rb_limit(const Ctx& c, const std::string& name) {
  const Schedule sch = parse_schedule(c.spec);
  const double tol = c.tol(1e-6);
  const auto op = heisenberg_operator<double>(name, PairWeightFamily::power(1.0));
  SplitMix64 rng(c.seed());
  Batch batch;
  bool lwz = true;
  bool converged = true;
  const int n = c.samples(20);
  for (int k = 0; k < n; ++k) {
    const Unipotent<double> a = random_unipotent<double>(rng);
    const Unipotent<double> b = random_unipotent<double>(rng);
    const RbLimitResult res = rb_limit_eval(op, a, b, sch);
    lwz = lwz && res.limit_weight_zero;
    converged = converged && res.report.converged;
    batch.add(res.residual, a, b, tol);
  }
  JobResult r;
  r.report = batch.to_json();
  r.report["operator"] = op.name;
  r.report["limit_weight_zero"] = lwz;
  r.status = status_from(batch.max <= tol && lwz, converged || batch.max <= tol);
  return r;
}

template <class S>
LieOperator<S> parse_lie_operator(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "projection-to-center") return LieOperator<S>::projection_to_center();
    if (s == "negate-first") return LieOperator<S>::negate_first();
    if (s == "identity") return LieOperator<S>::identity();
    if (s == "zero") return LieOperator<S>::zero();
    if (s == "ad-e12") return LieOperator<S>::ad(heis_basis<S>(0), s);
    if (s == "ad-e23") return LieOperator<S>::ad(heis_basis<S>(1), s);
    if (s == "ad-e13") return LieOperator<S>::ad(heis_basis<S>(2), s);
    throw SpecError("unknown Lie operator: " + s);
  }
  const Mat<S> m = matrix_from_json<S>(j);
  if (m.rows() != 3) throw SpecError("coordinate matrix must be 3x3");
  return LieOperator<S>(CoordMap<S>(m));
}

template <class S, class F>
Batch lie_batch(const Ctx& c, F residual, double tol) {
  Batch batch;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const NilMat<S> u = heis_basis<S>(i);
      const NilMat<S> v = heis_basis<S>(j);
      batch.add(residual(u, v), u, v, tol);
    }
  if (c.spec.contains("samples")) {
    SplitMix64 rng(c.seed());
    const int n = c.samples(100);
    for (int k = 0; k < n; ++k) {
      const NilMat<S> u = random_nil<S>(rng);
      const NilMat<S> v = random_nil<S>(rng);
      batch.add(residual(u, v), u, v, tol);
    }
  }
  return batch;
}

template <class S>
JobResult verify_rb_lie(const Ctx& c, double tol) {
  const LieOperator<S> b = parse_lie_operator<S>(c.spec.at("operator"));
  const std::string weight = c.str("weight", "zero");
  Batch batch;
  if (weight == "zero") {
    batch = lie_batch<S>(c, [&](const NilMat<S>& u, const NilMat<S>& v) { return rb_lie_residual_zero(b, u, v); },
                         tol);
  } else if (weight == "pair") {
    const auto id = LieOperator<S>::identity();
    batch = lie_batch<S>(
        c, [&](const NilMat<S>& u, const NilMat<S>& v) { return rb_lie_residual_pair(b, id, id, u, v); }, tol);
  } else if (weight == "limit") {
    const Schedule sch = parse_schedule(c.spec);
    const LieOperator<double> bd = to_double(b);
    batch = lie_batch<double>(
        c,
        [&](const NilMat<double>& u, const NilMat<double>& v) {
          return rb_lie_residual_limit(bd, u, v, sch).residual;
        },
        tol);
  } else {
    throw SpecError("verify-rb lie: weight must be zero, pair or limit");
  }
  JobResult r;
  r.report = batch.to_json();
  r.report["operator"] = b.name();
  r.report["weight"] = weight;
  r.status = status_from(batch.ok(c.exact() && weight != "limit", tol));
  return r;
}

JobResult op_verify_rb(const Ctx& c) {
  require_fields(c.spec, {"kind", "operator", "family", "samples", "schedule", "weight", "support"}, "verify-rb");
  const std::string kind = c.spec.at("kind").get<std::string>();
  const double tol = c.tol(kFloor);

  if (kind == "lie") return c.exact() ? verify_rb_lie<Rational>(c, tol) : verify_rb_lie<double>(c, tol);

  const json& opj = c.spec.at("operator");
  const PairWeightFamily fam = parse_family(c.spec, PairWeightFamily::identity());
  if (kind == "limit") return verify_rb_limit(c, opj.get<std::string>());
  if (kind != "weight1" && kind != "pair" && kind != "rboze") throw SpecError("verify-rb: unknown kind " + kind);

  if (opj.is_string() && is_heisenberg_operator(opj.get<std::string>())) {
    return c.exact() ? verify_rb_heisenberg<Rational>(c, kind, opj.get<std::string>(), fam, tol)
                     : verify_rb_heisenberg<double>(c, kind, opj.get<std::string>(), fam, tol);
  }
  if (kind == "rboze") throw SpecError("verify-rb rboze needs a Heisenberg operator");

  JobResult r;
  if (opj.is_string() && (opj.get<std::string>() == "shift-s3" || opj.get<std::string>() == "inverse-seq-s3")) {
    const int support = c.spec.value("support", 8);
    if (support < 0 || support > kMaxSupport) throw SpecError("support must be in [0, 64]");
    const auto op = opj.get<std::string>() == "shift-s3" ? shift_operator<Perm3>() : inverse_operator<SeqElt<Perm3>>();
    const auto gen = [support](SplitMix64& g) { return random_seq<Perm3>(g, support, random_perm); };
    Batch batch = group_batch<SeqElt<Perm3>>(c, kind, op, fam, gen, tol);
    if (kind == "weight1" && opj.get<std::string>() == "shift-s3") {
      const auto [a, b] = shift_weight1_witness();
      const Residual w = rb_weight1_residual(op, a, b);
      r.report["stored_witness"] = {{"a", elem_json(a)}, {"b", elem_json(b)}, {"residual", residual_to_json(w)}};
      batch.add(w, a, b, tol);
    }
    json body = batch.to_json();
    if (!r.report.is_null()) body.update(r.report);
    r.report = body;
    r.report["operator"] = op.name;
    r.status = status_from(batch.ok(true, tol));
    return r;
  }
  const auto op = s3_operator(opj, fam);
  Batch batch = group_batch<Perm3>(c, kind, op, fam, random_perm, tol);
  r.report = batch.to_json();
  r.report["operator"] = op.name;
  r.status = status_from(batch.ok(true, tol));
  return r;
}

// --- verify-diff ------------------------------------------------------------------

template <class S>
LieDerivation<S> parse_derivation(const json& spec) {
  if (!spec.contains("derivation")) throw SpecError("verify-diff: missing derivation");
  return LieDerivation<S>(parse_lie_operator<S>(spec.at("derivation")));
}

template <class S>
JobResult verify_diff_exact(const Ctx& c, const std::string& kind, double tol) {
  const LieDerivation<S> d = parse_derivation<S>(c.spec);
  Batch batch;
  if (kind == "closed") {
    const auto op = diff_closed_form(d);
    SplitMix64 rng(c.seed());
    const int n = c.samples(200);
    for (int k = 0; k < n; ++k) {
      const NilMat<S> u = random_nil<S>(rng);
      const NilMat<S> v = random_nil<S>(rng);
      batch.add(diffg0e_residual(op, u, v), u, v, tol);
    }
  } else {
    const std::string weight = c.str("weight", "zero");
    if (weight == "zero") {
      batch = lie_batch<S>(
          c, [&](const NilMat<S>& u, const NilMat<S>& v) { return lie_derivation_residual_zero(d, u, v); }, tol);
    } else if (weight == "limit") {
      const Schedule sch = parse_schedule(c.spec);
      const LieDerivation<double> dd(to_double(d.map()));
      batch = lie_batch<double>(
          c,
          [&](const NilMat<double>& u, const NilMat<double>& v) {
            return lie_derivation_residual_limit(dd, u, v, sch).residual;
          },
          tol);
      JobResult r;
      r.report = batch.to_json();
      r.status = status_from(batch.max <= tol);
      return r;
    } else {
      throw SpecError("verify-diff lie: weight must be zero or limit");
    }
  }
  JobResult r;
  r.report = batch.to_json();
  r.report["derivation"] = d.name();
  r.report["is_derivation"] = d.is_derivation();
  r.status = status_from(batch.ok(c.exact(), tol));
  return r;
}

JobResult op_verify_diff(const Ctx& c) {
  require_fields(c.spec, {"kind", "derivation", "samples", "schedule", "weight"}, "verify-diff");
  const std::string kind = c.spec.at("kind").get<std::string>();
  if (kind == "closed" || kind == "lie") {
    const double tol = c.tol(kFloor);
    return c.exact() ? verify_diff_exact<Rational>(c, kind, tol) : verify_diff_exact<double>(c, kind, tol);
  }
  if (kind != "limit") throw SpecError("verify-diff: kind must be closed, limit or lie");
  const double tol = c.tol(1e-6);
  const Schedule sch = parse_schedule(c.spec);
  const auto op = diff_closed_form(parse_derivation<double>(c.spec));
  SplitMix64 rng(c.seed());
  Batch batch;
  bool converged = true;
  const int n = c.samples(20);
  for (int k = 0; k < n; ++k) {
    const Unipotent<double> a = random_unipotent<double>(rng);
    const Unipotent<double> b = random_unipotent<double>(rng);
    const LimitResidual res = diff_limit_residual(op, a, b, sch);
    converged = converged && res.report.converged;
    batch.add(res.residual, a, b, tol);
  }
  JobResult r;
  r.report = batch.to_json();
  r.report["operator"] = op.name;
  r.status = status_from(batch.max <= tol, converged || batch.max <= tol);
  return r;
}

// --- verify-tangent ---------------------------------------------------------------

JobResult op_verify_tangent(const Ctx& c) {
  require_fields(c.spec, {"theorem", "fixture", "hmin_exp", "stencil"}, "verify-tangent");
  const auto theorem = parse_tangent_theorem(c.spec.at("theorem").get<std::string>());
  if (!theorem) throw SpecError("verify-tangent: unknown theorem");
  const std::string fixture_name = c.str("fixture", default_fixture(*theorem));
  const std::string stencil_name = c.str("stencil", "central-2");
  if (stencil_name != "central-2" && stencil_name != "central-4") throw SpecError("verify-tangent: unknown stencil");
  const Stencil stencil = stencil_name == "central-4" ? Stencil::central4 : Stencil::central2;
  const TangentReport t =
      verify_tangent_theorem(*theorem, tangent_fixture(fixture_name), c.spec.value("hmin_exp", 7), c.tol(1e-6), stencil);

  json ladder = json::array();
  for (const TangentLevel& l : t.ladder)
    ladder.push_back({{"h", l.h}, {"error", number_to_json(l.error)}, {"extracted", matrix_to_json(l.extracted)}});
  json slopes = json::array();
  for (double s : t.slopes) slopes.push_back(number_to_json(s));
  JobResult r;
  r.report = {{"theorem", t.theorem},
              {"fixture", t.fixture},
              {"expected", matrix_to_json(t.expected)},
              {"ladder", ladder},
              {"slopes", slopes},
              {"order", number_to_json(t.order)},
              {"lie_residual", number_to_json(t.lie_residual)},
              {"lie_exact", t.lie_exact},
              {"family_tangent_error", number_to_json(t.family_tangent_error)},
              {"tangent_ok", t.tangent_ok},
              {"lie_ok", t.lie_ok},
              {"slope_ok", t.slope_ok}};
  r.status = status_from(t.passed());
  return r;
}

}  // namespace

JobResult run_job(const json& spec, const RunOptions& opts) {
  if (!spec.is_object()) throw SpecError("job spec must be a JSON object");
  if (!spec.contains("op") || !spec.at("op").is_string()) throw SpecError("job spec: missing op");
  const std::string op = spec.at("op").get<std::string>();
  const std::string expect = spec.value("expect", std::string("pass"));
  if (expect != "pass" && expect != "fail" && expect != "non-convergent")
    throw SpecError("expect must be pass, fail or non-convergent");

  const Ctx c{spec, opts};
  JobResult r;
  try {
    if (op == "integrate") r = op_integrate(c);
    else if (op == "derive") r = op_derive(c);
    else if (op == "ftc") r = op_ftc(c);
    else if (op == "ibp") r = op_ibp(c);
    else if (op == "leibniz") r = op_leibniz(c);
    else if (op == "trotter") r = op_trotter(c);
    else if (op == "verify-rb") r = op_verify_rb(c);
    else if (op == "verify-diff") r = op_verify_diff(c);
    else if (op == "verify-tangent") r = op_verify_tangent(c);
    else throw SpecError("unknown op: " + op);
  } catch (const json::exception& e) {
    throw SpecError(std::string("job spec: ") + e.what());
  } catch (const DomainError& e) {
    throw SpecError(e.what());
  } catch (const DimensionError& e) {
    throw SpecError(e.what());
  }
  json out;
  out["job"] = spec;
  out["status"] = to_string(r.status);
  out["result"] = r.report;
  out["exact_mode"] = c.exact();
  r.report = out;
  r.as_expected = to_string(r.status) == expect;
  return r;
}

// --- scenarios -------------------------------------------------------------------------

namespace {

json m3(std::initializer_list<std::initializer_list<double>> rows) {
  json j = json::array();
  for (const auto& r : rows) j.push_back(std::vector<double>(r));
  return {{"dim", static_cast<int>(rows.size())}, {"rows", j}};
}

json coords3(double a, double b, double c) { return m3({{0, a, c}, {0, 0, b}, {0, 0, 0}}); }

json path3(std::initializer_list<std::array<double, 3>> coeffs) {
  json cs = json::array();
  for (const auto& k : coeffs) cs.push_back(coords3(k[0], k[1], k[2]));
  return {{"dim", 3}, {"coeffs", cs}};
}

// E12 + t E23
json fixture_path() { return path3({{1, 0, 0}, {0, 1, 0}}); }

json criterion_jobs(int k) {
  json jobs = json::array();
  switch (k) {
    case 1:
      jobs.push_back({{"op", "integrate"}, {"name", "c1-product-integral"}, {"path", fixture_path()}, {"x", 1},
                      {"mode", "numeric"}, {"schedule", {{"kmin", 2}, {"kmax", 12}, {"tol", 1e-3}}}, {"tol", 1e-3}});
      break;
    case 2:
      jobs.push_back({{"op", "ftc"}, {"name", "c2-ftc-random"}, {"samples", 50}, {"degree", 3}, {"exact", true}});
      break;
    case 3: {
      jobs.push_back({{"op", "ibp"}, {"name", "c3-ibp-closed"}, {"samples", 200}, {"degree", 2}, {"exact", true}});
      const std::vector<std::pair<json, json>> fixtures = {
          {path3({{1, 0, 0}}), path3({{0, 1, 0}})},
          {fixture_path(), path3({{0, 1, 0}, {1, 0, 0}})},
          {path3({{1, 1, 0}, {0, 0, 1}}), path3({{0, 0, 0}, {1, -1, 0}})},
          {path3({{0.5, 0, 0}, {0, 0, 0}, {0, 1, 0}}), path3({{0, 1, 1}, {-1, 0, 0}})},
          {path3({{1, -1, 0.5}, {0.5, 0.5, 0}}), path3({{-1, 2, 0}, {0, 0, 0}, {1, 0, 0}})}};
      int idx = 0;
      for (const auto& [a, b] : fixtures)
        jobs.push_back({{"op", "ibp"}, {"name", "c3-ibp-numeric-" + std::to_string(++idx)}, {"path", a},
                        {"path_b", b}, {"x", 1}, {"mode", "numeric"},
                        {"schedule", {{"kmin", 2}, {"kmax", 12}, {"tol", 1e-4}}}, {"tol", 1e-4}});
      break;
    }
    case 4:
      jobs.push_back({{"op", "leibniz"}, {"name", "c4-leibniz-random"}, {"samples", 200}, {"degree", 2},
                      {"exact", true}});
      jobs.push_back({{"op", "leibniz"}, {"name", "c4-leibniz-fixture"}, {"path", path3({{0, 0, 0}, {1, 0, 0}})},
                      {"path_b", path3({{0, 0, 0}, {0, 1, 0}})}, {"x", "3/2"}, {"exact", true}});
      break;
    case 5:
      jobs.push_back({{"op", "trotter"}, {"name", "c5-trotter-random"}, {"samples", 20},
                      {"schedule", {{"kmin", 2}, {"kmax", 12}}}, {"ratio_from", 6}});
      break;
    case 6:
      jobs.push_back({{"op", "verify-rb"}, {"name", "c6-factorization-weight1"}, {"kind", "weight1"},
                      {"operator", "factorization-heisenberg"}, {"samples", 10000}, {"exact", true}});
      jobs.push_back({{"op", "verify-rb"}, {"name", "c6-induced-pair"}, {"kind", "pair"},
                      {"operator", "induced-factorization-heisenberg"}, {"family", "identity"}, {"samples", 1000},
                      {"exact", true}});
      break;
    case 7:
      jobs.push_back({{"op", "verify-rb"}, {"name", "c7-shift-pair"}, {"kind", "pair"}, {"operator", "shift-s3"},
                      {"family", "shift"}, {"samples", 1000}, {"support", 8}});
      jobs.push_back({{"op", "verify-rb"}, {"name", "c7-shift-weight1-witness"}, {"kind", "weight1"},
                      {"operator", "shift-s3"}, {"samples", 1}, {"support", 0}, {"expect", "fail"}});
      break;
    case 8:
      for (const char* op : {"rb0-center", "rb0-negate-first"}) {
        jobs.push_back({{"op", "verify-rb"}, {"name", std::string("c8-rboze-") + op}, {"kind", "rboze"},
                        {"operator", op}, {"samples", 200}, {"exact", true}});
        jobs.push_back({{"op", "verify-rb"}, {"name", std::string("c8-limit-") + op}, {"kind", "limit"},
                        {"operator", op}, {"samples", 20}, {"tol", 1e-6}});
      }
      break;
    case 9:
      jobs.push_back({{"op", "verify-tangent"}, {"name", "c9-rbg2rbl0-center"}, {"theorem", "rbg2rbl0"},
                      {"fixture", "rb0-center"}, {"hmin_exp", 7}});
      jobs.push_back({{"op", "verify-tangent"}, {"name", "c9-rbg2rbl0-negate-first"}, {"theorem", "rbg2rbl0"},
                      {"fixture", "rb0-negate-first"}, {"hmin_exp", 7}});
      jobs.push_back({{"op", "verify-tangent"}, {"name", "c9-dgpl0-ad-e12"}, {"theorem", "dgpl0"},
                      {"fixture", "diff-ad-e12"}, {"hmin_exp", 7}});
      break;
    case 10:
      for (const char* d : {"ad-e12", "ad-e23", "ad-e13"})
        jobs.push_back({{"op", "verify-diff"}, {"name", std::string("c10-closed-") + d}, {"kind", "closed"},
                        {"derivation", d}, {"samples", 200}, {"exact", true}});
      jobs.push_back({{"op", "verify-diff"}, {"name", "c10-limit"}, {"kind", "limit"}, {"derivation", "ad-e12"},
                      {"samples", 20}, {"tol", 1e-6}});
      break;
    default:
      break;
  }
  return jobs;
}

json worked_example_jobs() {
  json jobs = json::array();
  jobs.push_back({{"op", "integrate"}, {"name", "ex-integral-closed"}, {"path", fixture_path()}, {"x", 1},
                  {"exact", true}});
  jobs.push_back({{"op", "derive"}, {"name", "ex-derivative-closed"}, {"path", path3({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}})},
                  {"x", 1}, {"exact", true}});
  jobs.push_back({{"op", "derive"}, {"name", "ex-derivative-numeric"},
                  {"path", path3({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}})}, {"x", 1}, {"mode", "numeric"},
                  {"tol", 1e-4}});
  jobs.push_back({{"op", "ftc"}, {"name", "ex-ftc"}, {"path", fixture_path()}, {"x", 1}, {"exact", true}});
  jobs.push_back({{"op", "ibp"}, {"name", "ex-ibp"}, {"path", path3({{1, 0, 0}})}, {"path_b", path3({{0, 1, 0}})},
                  {"x", 1}, {"exact", true}});
  jobs.push_back({{"op", "leibniz"}, {"name", "ex-leibniz"}, {"path", path3({{0, 0, 0}, {1, 0, 0}})},
                  {"path_b", path3({{0, 0, 0}, {0, 1, 0}})}, {"x", 1}, {"exact", true}});
  jobs.push_back({{"op", "trotter"}, {"name", "ex-trotter-heisenberg"}, {"x", coords3(1, 0, 0)},
                  {"y", coords3(0, 1, 0)}});
  jobs.push_back({{"op", "trotter"}, {"name", "ex-trotter-cosh"}, {"x", m3({{0, 1}, {0, 0}})},
                  {"y", m3({{0, 0}, {1, 0}})}});
  jobs.push_back({{"op", "verify-rb"}, {"name", "ex-shift-weight1"}, {"kind", "weight1"}, {"operator", "shift-s3"},
                  {"samples", 1}, {"support", 0}, {"expect", "fail"}});
  jobs.push_back({{"op", "verify-rb"}, {"name", "ex-lie-identity-pair"}, {"kind", "lie"}, {"operator", "identity"},
                  {"weight", "pair"}, {"exact", true}, {"expect", "fail"}});
  jobs.push_back({{"op", "verify-rb"}, {"name", "ex-lie-center"}, {"kind", "lie"},
                  {"operator", "projection-to-center"}, {"weight", "zero"}, {"exact", true}});
  jobs.push_back({{"op", "verify-diff"}, {"name", "ex-diff-identity"}, {"kind", "lie"}, {"derivation", "identity"},
                  {"exact", true}, {"expect", "fail"}});
  jobs.push_back({{"op", "verify-diff"}, {"name", "ex-diff-ad-e12"}, {"kind", "closed"}, {"derivation", "ad-e12"},
                  {"samples", 20}, {"exact", true}});
  return jobs;
}

}  // namespace

std::vector<std::string> scenario_names() {
  std::vector<std::string> names = {"acceptance-all", "paper-examples"};
  for (int k = 1; k <= 10; ++k) names.push_back("criterion-" + std::to_string(k));
  return names;
}

json scenario_jobs(const std::string& name) {
  if (name == "acceptance-all") {
    json all = json::array();
    for (int k = 1; k <= 10; ++k)
      for (const json& j : criterion_jobs(k)) all.push_back(j);
    return all;
  }
  if (name == "paper-examples") return worked_example_jobs();
  for (int k = 1; k <= 10; ++k)
    if (name == "criterion-" + std::to_string(k)) return criterion_jobs(k);
  throw SpecError("unknown scenario: " + name);
}

ScenarioResult run_scenario(const std::string& name, const RunOptions& opts) {
  const json jobs = scenario_jobs(name);
  ScenarioResult out;
  json reports = json::array();
  bool all_expected = true;
  bool any_nonconv = false;
  for (const json& spec : jobs) {
    JobResult r = run_job(spec, opts);
    r.report["as_expected"] = r.as_expected;
    all_expected = all_expected && r.as_expected;
    any_nonconv = any_nonconv || (!r.as_expected && r.status == JobStatus::non_convergent);
    const std::string label = spec.value("name", spec.at("op").get<std::string>());
    for (auto& [tname, rep] : r.tables) out.tables.emplace_back(label + "/" + tname, rep);
    reports.push_back(std::move(r.report));
  }
  out.status = all_expected ? JobStatus::pass : (any_nonconv ? JobStatus::non_convergent : JobStatus::fail);
  out.report = {{"scenario", name}, {"status", to_string(out.status)}, {"jobs", reports}};
  return out;
}

std::string tables_to_csv(const std::vector<Table>& tables) {
  std::ostringstream os;
  os.precision(17);
  for (const auto& [label, r] : tables) {
    os << "# " << label << "\n";
    os << "n,value_frobnorm,delta,order_est\n";
    for (std::size_t k = 0; k < r.ns.size(); ++k) {
      os << r.ns[k] << ',' << r.values[k].norm() << ',';
      if (k >= 1) os << r.deltas[k - 1];
      os << ',';
      if (k >= 2 && r.deltas[k - 1] > 0.0 && r.deltas[k - 2] > 0.0) os << std::log2(r.deltas[k - 2] / r.deltas[k - 1]);
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace multcalc
