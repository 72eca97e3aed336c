#include "closure/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "closure/error.hpp"
#include "closure/serialize.hpp"

namespace closure::cli {

namespace {

using io::json;
using io::to_json;
using TowerPtr = std::shared_ptr<FieldTower>;

const Exponent kDefaultTarget(8);
constexpr unsigned kLampertMaxSteps = 24;

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

json read_input(const JobConfig& c) {
  try {
    if (c.in.empty() || c.in == "-") return json::parse(std::cin);
    std::ifstream f(c.in);
    if (!f) throw InvalidInput("cannot open input file '" + c.in + "'");
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON input: ") + e.what());
  }
}

// First characteristic mentioned anywhere in the input.
std::optional<std::uint64_t> find_p(const json& j) {
  if (j.is_object()) {
    if (j.contains("p") && j["p"].is_number_unsigned()) return j["p"].get<std::uint64_t>();
    for (const auto& [k, v] : j.items())
      if (auto p = find_p(v)) return p;
  } else if (j.is_array()) {
    for (const auto& v : j)
      if (auto p = find_p(v)) return p;
  } else if (j.is_string()) {
    const std::string s = j.get<std::string>();
    unsigned long p = 0;
    if (std::sscanf(s.c_str(), "W(%lu,", &p) == 1 || std::sscanf(s.c_str(), "%lu^", &p) == 1) return p;
  }
  return std::nullopt;
}

TowerPtr tower_for(const JobConfig& c, const json* input) {
  std::optional<std::uint64_t> p = c.p;
  if (!p && input) p = find_p(*input);
  if (!p) throw InvalidInput("no characteristic given; pass --p");
  if (!is_prime(*p) || *p > 65521) throw InvalidInput("p = " + std::to_string(*p) + " is not a supported prime");
  return FieldTower::create(*p, c.seed);
}

Exponent target_of(const JobConfig& c) {
  const Exponent t = c.target.value_or(kDefaultTarget);
  if (t.sign() <= 0) throw InvalidInput("precision target must be positive, got " + t.to_string());
  return t;
}

const json& coeffs_of(const json& poly) {
  if (!poly.is_object() || !poly.contains("coeffs") || !poly["coeffs"].is_array())
    throw InvalidInput("polynomial needs a 'coeffs' array, leading coefficient first");
  return poly["coeffs"];
}

SeriesPoly<FqSeries> series_poly(const json& poly, const TowerPtr& T) {
  SeriesPoly<FqSeries> P;
  for (const auto& c : coeffs_of(poly)) P.push_back(io::fq_series_from_json(c, T));
  return P;
}

SeriesPoly<DigitSeries> digit_poly(const json& poly, const TowerPtr& T) {
  SeriesPoly<DigitSeries> P;
  for (const auto& c : coeffs_of(poly)) P.push_back(io::digit_series_from_json(c, T));
  return P;
}

std::vector<GrElem> witt_poly(const json& poly, const TowerPtr& T) {
  if (!poly.contains("ring") || !poly["ring"].is_string()) throw InvalidInput("polynomial needs a 'ring' descriptor");
  const RingPtr R = io::ring_from_descriptor(poly["ring"].get<std::string>(), T);
  std::vector<GrElem> Q;
  for (const auto& c : coeffs_of(poly)) Q.push_back(io::gr_from_json(c, T, R));
  return Q;
}

json series_poly_json(const SeriesPoly<FqSeries>& P) {
  json c = json::array();
  for (const auto& s : P) c.push_back(to_json(s));
  return json{{"kind", "series"}, {"coeffs", c}};
}

json digit_poly_json(const SeriesPoly<DigitSeries>& P) {
  json c = json::array();
  for (const auto& s : P) c.push_back(to_json(s));
  return json{{"kind", "digits"}, {"coeffs", c}};
}

json witt_poly_json(const std::vector<GrElem>& Q, const Exponent& working) {
  json c = json::array();
  for (const auto& x : Q) c.push_back(to_json(x));
  return json{{"kind", "witt"}, {"ring", Q.front().ring()->descriptor()}, {"coeffs", c},
              {"working_precision", to_json(working)}};
}

Exponent witt_working_precision(const std::vector<GrElem>& Q, const Exponent& target) {
  std::vector<PolygonPoint> pts;
  for (std::size_t i = 0; i < Q.size(); ++i)
    if (!Q[i].is_zero()) pts.push_back({static_cast<int>(i), {Exponent(static_cast<long>(Q[i].valuation())), true}});
  Exponent rise(0);
  if (pts.size() >= 2) {
    const NewtonPolygon poly = newton_polygon(pts);
    rise = max(Exponent(0), poly.vertices.back().val.value - poly.vertices.front().val.value);
  }
  return target + Exponent(rise.ceil_long() + 2);
}

SeriesPoly<DigitSeries> witt_as_digits(const std::vector<GrElem>& Q, const Exponent& N) {
  SeriesPoly<DigitSeries> D;
  for (const auto& c : Q) D.push_back(ds_from_gr(c, N));
  return D;
}

template <class S>
json roots_json(const std::vector<RootApprox<S>>& roots, bool& exhausted) {
  json out = json::array();
  for (const auto& r : roots) {
    exhausted = exhausted || r.exhausted;
    json j = io::root_to_json(r);
    j["support"] = json::array();
    for (const auto& [e, c] : r.value.terms()) j["support"].push_back(to_json(e));
    out.push_back(std::move(j));
  }
  return out;
}

json header(const JobConfig& c, const std::string& command) {
  return json{{"schema", io::kSchema}, {"command", command}, {"seed", c.seed}};
}

struct Report {
  json body;
  int code = kOk;
};

// ---- solvers ----------------------------------------------------------------

Report solve_series(const JobConfig& c) {
  const json in = read_input(c);
  const TowerPtr T = tower_for(c, &in);
  const Exponent target = target_of(c);
  const unsigned steps = c.max_steps.value_or(kDefaultMaxSteps);
  const auto P = series_poly(in, T);
  const auto roots = solve_roots(P, target, steps);
  bool exhausted = false;
  json body = header(c, "solve-series");
  body.update({{"p", T->p()}, {"target", to_json(target)}, {"max_steps", steps}, {"poly", series_poly_json(P)},
               {"polygon", to_json(polygon_of(P))}, {"roots", roots_json(roots, exhausted)}});
  body["exhausted"] = exhausted;
  return {body, exhausted ? kExhausted : kOk};
}

Report solve_padic(const JobConfig& c) {
  const json in = read_input(c);
  const TowerPtr T = tower_for(c, &in);
  const Exponent target = target_of(c);
  const unsigned steps = c.max_steps.value_or(kDefaultMaxSteps);
  const auto P = digit_poly(in, T);
  const auto roots = solve_roots_mixed(P, target, steps);
  bool exhausted = false;
  json body = header(c, "solve-padic");
  body.update({{"p", T->p()}, {"target", to_json(target)}, {"max_steps", steps}, {"poly", digit_poly_json(P)},
               {"polygon", to_json(polygon_of(P))}, {"roots", roots_json(roots, exhausted)}});
  body["exhausted"] = exhausted;
  return {body, exhausted ? kExhausted : kOk};
}

Report solve_witt_poly(const JobConfig& c, const std::string& command, const std::vector<GrElem>& Q,
                       const Exponent& target, unsigned steps) {
  const Exponent N = witt_working_precision(Q, target);
  const auto roots = solve_over_witt(Q, target, steps);
  bool exhausted = false;
  json body = header(c, command);
  body.update({{"p", Q.front().p()}, {"target", to_json(target)}, {"max_steps", steps},
               {"poly", witt_poly_json(Q, N)}, {"polygon", to_json(polygon_of(witt_as_digits(Q, N)))},
               {"roots", roots_json(roots, exhausted)}});
  body["exhausted"] = exhausted;
  return {body, exhausted ? kExhausted : kOk};
}

Report solve_witt(const JobConfig& c) {
  const json in = read_input(c);
  const TowerPtr T = tower_for(c, &in);
  return solve_witt_poly(c, "solve-witt", witt_poly(in, T), target_of(c), c.max_steps.value_or(kDefaultMaxSteps));
}

Report lampert(const JobConfig& c) {
  const TowerPtr T = tower_for(c, nullptr);
  const std::uint64_t p = T->p();
  const Exponent target = target_of(c);
  const unsigned steps = c.max_steps.value_or(kLampertMaxSteps);
  // x^p - p^{p-1} x - p^{p-1}; the ring must hold the coefficients exactly
  // to the working precision.
  const long m = target.ceil_long() + static_cast<long>(p) + 2;
  mpz_class pm;
  mpz_ui_pow_ui(pm.get_mpz_t(), p, static_cast<unsigned long>(m));
  if (pm > mpz_class(std::to_string(UINT64_MAX))) throw InvalidInput("p^(prec + p + 2) exceeds 64 bits");
  const RingPtr R = T->galois_ring(static_cast<unsigned>(m), 1);
  long long pp = 1;
  for (std::uint64_t i = 1; i < p; ++i) pp *= static_cast<long long>(p);
  std::vector<GrElem> Q(p + 1, GrElem::zero(R));
  Q[0] = GrElem::one(R);
  Q[p - 1] = GrElem::from_int(R, -pp);
  Q[p] = GrElem::from_int(R, -pp);

  Report rep = solve_witt_poly(c, "lampert", Q, target, steps);
  json& body = rep.body;
  std::vector<Exponent> all;
  Exponent worst = target;
  bool certified = true;
  for (auto& r : body["roots"]) {
    std::vector<Exponent> sup;
    for (const auto& e : r["support"]) sup.push_back(io::exponent_from_json(e));
    all.insert(all.end(), sup.begin(), sup.end());
    const auto fit = sab_fit(sup, p);
    r["sab_fit"] = fit ? to_json(*fit) : json(nullptr);
    const Exponent cert = io::exponent_from_json(r["certificate"]["substitution_valuation"]);
    worst = min(worst, cert);
    certified = certified && cert >= target;
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  json sup = json::array();
  for (const auto& e : all) sup.push_back(to_json(e));
  const auto fit = sab_fit(all, p);
  body["equation"] = "x^p - p^(p-1) x - p^(p-1)";
  body["support_union"] = sup;
  body["sab_fit"] = fit ? to_json(*fit) : json(nullptr);
  body["certificate"] = {{"min_substitution_valuation", to_json(worst)}, {"reaches_target", certified}};
  return rep;
}

// ---- recurrences --------------------------------------------------------------

Report recur(const JobConfig& c) {
  const std::string sub = c.command.size() > 1 ? c.command[1] : "";
  const json in = read_input(c);
  const TowerPtr T = tower_for(c, &in);
  json body = header(c, "recur " + sub);
  if (sub == "solve") {
    const Recurrence r = io::recurrence_from_json(in, T);
    const SolutionBasis B = solve_semilinear(r);
    json basis = json::array();
    bool ok = true;
    for (const auto& z : B.z) {
      basis.push_back(to_json(z));
      ok = ok && r.apply(z).is_zero();
    }
    body.update({{"relation", to_json(r)}, {"basis_ring", B.ring->descriptor()}, {"basis", basis},
                 {"rank", B.z.size()}, {"verified", ok}});
    return {body, ok ? kOk : kInternal};
  }
  if (sub == "combine") {
    if (!in.contains("a") || !in.contains("b")) throw InvalidInput("combine needs relations 'a' and 'b'");
    const Recurrence a = io::recurrence_from_json(in["a"], T), b = io::recurrence_from_json(in["b"], T);
    if (c.op != "sum" && c.op != "product") throw InvalidInput("--op must be sum or product");
    const Recurrence r = c.op == "sum" ? combine_sum(a, b) : combine_product(a, b);
    body.update({{"op", c.op}, {"relation", to_json(r)}});
    return {body, kOk};
  }
  if (sub == "check") {
    if (!in.contains("relation") || !in.contains("sequence") || !in["sequence"].is_array())
      throw InvalidInput("check needs 'relation' and a 'sequence' array");
    const Recurrence r = io::recurrence_from_json(in["relation"], T);
    std::vector<GrElem> seq;
    for (const auto& x : in["sequence"]) seq.push_back(io::gr_from_json(x, T, r.ring()));
    body.update({{"relation", to_json(r)}, {"length", seq.size()}, {"holds", check_recurrence(seq, r)}});
    return {body, kOk};
  }
  if (sub == "split") {
    if (c.direction == "to") {
      const Recurrence r = io::recurrence_from_json(in, T);
      json comps = json::array();
      for (const auto& x : split_to_components(r)) comps.push_back(to_json(x));
      body.update({{"direction", "to"}, {"relation", to_json(r)}, {"components", comps}});
      return {body, kOk};
    }
    if (c.direction == "from") {
      if (!in.contains("components") || !in["components"].is_array())
        throw InvalidInput("split --direction from needs a 'components' array");
      std::vector<Recurrence> comps;
      for (const auto& x : in["components"]) comps.push_back(io::recurrence_from_json(x, T));
      unsigned m = static_cast<unsigned>(comps.size());
      if (c.m) m = *c.m;
      else if (in.contains("m") && in["m"].is_number_unsigned()) m = in["m"].get<unsigned>();
      body.update({{"direction", "from"}, {"relation", to_json(split_from_components(comps, m))}});
      return {body, kOk};
    }
    throw InvalidInput("--direction must be to or from");
  }
  throw InvalidInput("unknown recur subcommand '" + sub + "'");
}

// ---- analysis ------------------------------------------------------------------

template <class S>
Exponent substitution_valuation(const SeriesPoly<S>& P, const json& value, const TowerPtr& T) {
  std::vector<std::pair<Exponent, FqElem>> terms;
  if (!value.contains("terms")) throw InvalidInput("root value without terms");
  for (const auto& t : value["terms"]) terms.emplace_back(io::exponent_from_json(t.at(0)), io::fq_from_json(t.at(1), T));
  return SeriesOps<S>::val(evaluate(P, terms)).value;
}

Report verify(const JobConfig& c, const json& in, const TowerPtr& T) {
  if (!in.contains("poly") || !in.contains("roots")) throw InvalidInput("verify needs a solver report with 'poly' and 'roots'");
  const json& poly = in["poly"];
  const std::string kind = poly.value("kind", "");
  json checks = json::array();
  bool all = true;
  std::size_t i = 0;
  for (const auto& r : in["roots"]) {
    Exponent v;
    if (kind == "series") v = substitution_valuation(series_poly(poly, T), r.at("value"), T);
    else if (kind == "digits") v = substitution_valuation(digit_poly(poly, T), r.at("value"), T);
    else if (kind == "witt")
      v = substitution_valuation(witt_as_digits(witt_poly(poly, T), io::exponent_from_json(poly.at("working_precision"))),
                                 r.at("value"), T);
    else throw InvalidInput("unknown polynomial kind '" + kind + "'");
    const Exponent claimed = io::exponent_from_json(r.at("certificate").at("substitution_valuation"));
    const bool match = v == claimed;
    all = all && match;
    checks.push_back({{"index", i++}, {"substitution_valuation", to_json(v)}, {"matches_certificate", match}});
  }
  json body = header(c, "analyze verify");
  body.update({{"roots", checks}, {"all_match", all}});
  return {body, all ? kOk : kInternal};
}

Report analyze(const JobConfig& c) {
  const std::string sub = c.command.size() > 1 ? c.command[1] : "";
  const json in = read_input(c);
  const TowerPtr T = tower_for(c, &in);
  if (sub == "verify") return verify(c, in, T);
  const DigitSeries x = io::digit_series_from_json(in, T);
  json body = header(c, "analyze " + sub);
  if (sub == "support") {
    json sup = json::array();
    for (const auto& e : x.support()) sup.push_back(to_json(e));
    const auto fit = sab_fit(x.support(), T->p());
    body.update({{"N", to_json(x.N())}, {"support", sup}, {"valuation", to_json(v_p(x))},
                 {"sab_fit", fit ? to_json(*fit) : json(nullptr)}});
    return {body, kOk};
  }
  if (sub == "periodicity") {
    body.update({{"N", to_json(x.N())}, {"report", to_json(digit_periodicity(x, c.l))}});
    return {body, kOk};
  }
  throw InvalidInput("unknown analyze subcommand '" + sub + "'");
}

// ---- built-in oracles ----------------------------------------------------------

struct Check {
  std::string name;
  bool passed;
  std::string detail;
};

FqPoly poly_mul(const FqPoly& a, const FqPoly& b) {
  FqPoly r(a.size() + b.size() - 1, a[0] - a[0]);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

GrElem random_gr(const RingPtr& R, std::mt19937_64& rng) {
  std::vector<std::uint64_t> v(R->d());
  for (auto& x : v) x = rng() % R->modulus();
  return GrElem(R, v);
}

Check check_zpm() {
  unsigned bad = 0;
  for (auto [p, m] : {std::pair{2u, 5u}, {3u, 4u}, {5u, 3u}}) bad += zpm_oracle_check(p, m, 200).mismatches;
  return {"galois ring vs Z/p^m", bad == 0, std::to_string(bad) + " mismatches"};
}

Check check_teichmuller(std::uint64_t seed) {
  unsigned bad = 0, total = 0;
  for (auto [p, m, d] : {std::tuple{2u, 3u, 2u}, {3u, 2u, 2u}}) {
    auto T = FieldTower::create(p, seed);
    const RingPtr R = T->galois_ring(m, d);
    std::vector<FqElem> elems;
    std::vector<Coord> v(d, 0);
    while (true) {
      elems.push_back(T->element(d, v));
      unsigned i = 0;
      while (i < d && ++v[i] == p) v[i++] = 0;
      if (i == d) break;
    }
    for (const auto& x : elems)
      for (const auto& y : elems) {
        ++total;
        if (!(teichmuller(x, R) * teichmuller(y, R) == teichmuller(x * y, R))) ++bad;
      }
  }
  return {"teichmuller multiplicativity", bad == 0, std::to_string(bad) + "/" + std::to_string(total) + " failures"};
}

Check check_roots(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  unsigned bad = 0;
  for (std::uint64_t p : {2u, 3u}) {
    auto T = FieldTower::create(p, seed);
    for (int i = 0; i < 15; ++i) {
      const unsigned deg = 1 + static_cast<unsigned>(rng() % 5);
      FqPoly f;
      for (unsigned k = 0; k <= deg; ++k) f.push_back(T->random(2, rng));
      while (f.back().is_zero()) f.back() = T->random(2, rng);
      FqPoly g{f.back()};
      unsigned total = 0;
      for (const auto& [r, mult] : poly_roots(f, T)) {
        total += mult;
        for (unsigned k = 0; k < mult; ++k) g = poly_mul(g, {-r, FqElem::one(r.level())});
      }
      bool same = total == deg && g.size() == f.size();
      for (std::size_t k = 0; same && k < f.size(); ++k) same = g[k] == f[k];
      if (!same) ++bad;
    }
  }
  return {"finite-field roots rebuild the polynomial", bad == 0, std::to_string(bad) + " failures"};
}

Check check_artin_schreier(std::uint64_t seed) {
  auto T = FieldTower::create(2, seed);
  const FqElem one = T->from_int(1);
  const Exponent prec(40);
  SeriesPoly<FqSeries> P{FqSeries::constant(one, prec), FqSeries::constant(one, prec), FqSeries::monomial(one, 1, prec)};
  bool ok = false;
  for (const auto& r : solve_roots(P, 20)) {
    std::vector<Exponent> below;
    for (const auto& e : r.value.support())
      if (e < Exponent(20)) below.push_back(e);
    if (below == std::vector<Exponent>{1, 2, 4, 8, 16} && r.slope_reached >= Exponent(20)) ok = true;
  }
  return {"x^2 + x + t root", ok, ok ? "support {1,2,4,8,16}" : "expected root missing"};
}

Check check_normalize(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto T = FieldTower::create(2, seed);
  const RingPtr R = T->galois_ring(4, 2);
  auto random_series = [&] {
    std::vector<GrSeries::Term> terms;
    for (int i = 0, n = 1 + static_cast<int>(rng() % 3); i < n; ++i)
      terms.emplace_back(Exponent(static_cast<long>(rng() % 6), 2), random_gr(R, rng));
    return GrSeries(GrElem::zero(R), std::move(terms), 4);
  };
  unsigned bad = 0;
  for (int i = 0; i < 30; ++i) {
    const GrSeries x = random_series(), y = random_series();
    const DigitSeries nx = normalize(x, 4), ny = normalize(y, 4);
    if (!(ds_add(nx, ny) == normalize(x + y, 4))) ++bad;
    const DigitSeries lhs = ds_mul(nx, ny), rhs = normalize(x * y, 4);
    const Exponent common = min(lhs.N(), rhs.N());
    if (!(DigitSeries(T, lhs.terms(), common) == DigitSeries(T, rhs.terms(), common))) ++bad;
  }
  return {"carry normalization is a ring map", bad == 0, std::to_string(bad) + " failures"};
}

Check check_twistrec(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto T = FieldTower::create(2, seed);
  const RingPtr R = T->galois_ring(2, 2);
  unsigned bad = 0;
  auto random_relation = [&](unsigned k) {
    std::vector<GrElem> d{random_gr(R, rng)};
    while (!d[0].is_unit()) d[0] = random_gr(R, rng);
    for (unsigned j = 1; j < k; ++j) d.push_back(random_gr(R, rng));
    d.push_back(GrElem::one(R));
    return Recurrence(d);
  };
  auto sample = [&](const SolutionBasis& B) {
    const RingPtr L = T->galois_ring(2, B.ring->d());
    std::vector<GrElem> lambda;
    for (std::size_t i = 0; i < B.z.size(); ++i) lambda.push_back(random_gr(L, rng));
    return solution_sequence(B.z, lambda, 8);
  };
  for (int i = 0; i < 4; ++i) {
    const Recurrence a = random_relation(1 + static_cast<unsigned>(rng() % 2));
    const Recurrence b = random_relation(1 + static_cast<unsigned>(rng() % 2));
    const SolutionBasis Ba = solve_semilinear(a), Bb = solve_semilinear(b);
    if (Ba.z.size() != a.order()) ++bad;
    for (const auto& z : Ba.z)
      if (!a.apply(z).is_zero()) ++bad;
    const Recurrence s = combine_sum(a, b), pr = combine_product(a, b);
    const auto x = sample(Ba), y = sample(Bb);
    std::vector<GrElem> xs, xp;
    for (std::size_t n = 0; n < x.size(); ++n) {
      xs.push_back(x[n] + y[n]);
      xp.push_back(x[n] * y[n]);
    }
    if (!check_recurrence(xs, s) || !check_recurrence(xp, pr)) ++bad;
  }
  return {"semilinear solutions and combination", bad == 0, std::to_string(bad) + " failures"};
}

Report selfcheck(const JobConfig& c) {
  std::vector<Check> checks;
  auto guarded = [&](Check (*f)(std::uint64_t), const char* name) {
    try {
      checks.push_back(f(c.seed));
    } catch (const std::exception& e) {
      checks.push_back({name, false, e.what()});
    }
  };
  try {
    checks.push_back(check_zpm());
  } catch (const std::exception& e) {
    checks.push_back({"galois ring vs Z/p^m", false, e.what()});
  }
  guarded(check_teichmuller, "teichmuller multiplicativity");
  guarded(check_roots, "finite-field roots rebuild the polynomial");
  guarded(check_artin_schreier, "x^2 + x + t root");
  guarded(check_normalize, "carry normalization is a ring map");
  guarded(check_twistrec, "semilinear solutions and combination");
  json list = json::array();
  bool all = true;
  for (const auto& ch : checks) {
    all = all && ch.passed;
    list.push_back({{"name", ch.name}, {"passed", ch.passed}, {"detail", ch.detail}});
  }
  json body = header(c, "selfcheck");
  body.update({{"checks", list}, {"passed", all}});
  return {body, all ? kOk : kInternal};
}

// ---- output -------------------------------------------------------------------

bool is_inline(const json& v) {
  if (v.is_object()) return false;
  if (!v.is_array()) return true;
  for (const auto& x : v)
    if (!is_inline(x)) return false;
  return true;
}

std::string inline_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (!v.is_array()) return v.dump();
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + inline_text(v[i]);
  return s + "]";
}

void render_text(const json& j, std::ostream& os, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (const auto& [k, v] : j.items()) {
    if (is_inline(v)) {
      os << pad << k << ": " << inline_text(v) << "\n";
    } else if (v.is_array()) {
      os << pad << k << ":\n";
      for (const auto& x : v) {
        if (is_inline(x)) {
          os << pad << "  - " << inline_text(x) << "\n";
          continue;
        }
        os << pad << "  -\n";
        render_text(x, os, indent + 4);
      }
    } else {
      os << pad << k << ":\n";
      render_text(v, os, indent + 2);
    }
  }
}

void emit(const JobConfig& c, const json& body, std::ostream& out) {
  std::ostringstream os;
  if (c.json) os << body.dump(2) << "\n";
  else render_text(body, os, 0);
  if (c.out.empty() || c.out == "-") {
    out << os.str();
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw InvalidInput("cannot open output file '" + c.out + "'");
  f << os.str();
}

Report dispatch(const JobConfig& c) {
  if (c.max_steps && *c.max_steps == 0) throw InvalidInput("--max-steps must be positive");
  const std::string cmd = c.command.empty() ? "" : c.command[0];
  if (cmd == "solve-series") return solve_series(c);
  if (cmd == "solve-padic") return solve_padic(c);
  if (cmd == "solve-witt") return solve_witt(c);
  if (cmd == "lampert") return lampert(c);
  if (cmd == "recur") return recur(c);
  if (cmd == "analyze") return analyze(c);
  if (cmd == "selfcheck") return selfcheck(c);
  throw InvalidInput("unknown command '" + cmd + "'");
}

}  // namespace

int run(const JobConfig& config, std::ostream& out, std::ostream& err) {
  std::string kind;
  int code = kOk;
  std::string message;
  try {
    Report rep = dispatch(config);
    emit(config, rep.body, out);
    return rep.code;
  } catch (const PrecisionTooLow& e) {
    kind = "precision", code = kExhausted, message = e.what();
  } catch (const InternalError& e) {
    kind = "internal", code = kInternal, message = e.what();
  } catch (const std::exception& e) {
    kind = "invalid", code = kInvalid, message = e.what();
  }
  err << "error: " << message << "\n";
  std::string cmd;
  for (const auto& w : config.command) cmd += (cmd.empty() ? "" : " ") + w;
  try {
    emit(config, json{{"schema", io::kSchema}, {"command", cmd}, {"seed", config.seed},
                      {"error", {{"kind", kind}, {"message", message}}}},
         out);
  } catch (const std::exception&) {
  }
  return code;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"closure_forge: roots over generalized power series and twist-recurrent sequences"};
  app.require_subcommand(1);
  JobConfig c;
  std::uint64_t p = 0;
  std::string target;
  unsigned max_steps = 0;
  unsigned m = 0;

  auto common = [&](CLI::App* s, bool needs_input) {
    s->add_option("--p", p, "characteristic (prime)");
    s->add_option("--target,--prec", target, "precision target, \"n\" or \"n/d\"");
    s->add_option("--max-steps", max_steps, "Newton step budget per branch");
    s->add_option("--seed", c.seed, "seed for the field tower and sampling");
    s->add_flag("--json", c.json, "JSON output");
    if (needs_input) s->add_option("--in,--input", c.in, "input JSON file (default stdin)");
    s->add_option("--out", c.out, "output file (default stdout)");
  };

  for (const char* name : {"solve-series", "solve-padic", "solve-witt"}) common(app.add_subcommand(name), true);
  common(app.add_subcommand("lampert", "roots of x^p - p^(p-1) x - p^(p-1)"), false);
  common(app.add_subcommand("selfcheck", "run the built-in oracle suites"), false);

  CLI::App* recur = app.add_subcommand("recur", "twist-recurrence relations");
  recur->require_subcommand(1);
  for (const char* name : {"solve", "check"}) common(recur->add_subcommand(name), true);
  CLI::App* combine = recur->add_subcommand("combine");
  common(combine, true);
  combine->add_option("--op", c.op, "sum or product");
  CLI::App* split = recur->add_subcommand("split");
  common(split, true);
  split->add_option("--direction", c.direction, "to or from");
  split->add_option("--m", m, "length of the recombined relation");

  CLI::App* analyze = app.add_subcommand("analyze", "digit series analysis");
  analyze->require_subcommand(1);
  for (const char* name : {"support", "verify"}) common(analyze->add_subcommand(name), true);
  CLI::App* periodicity = analyze->add_subcommand("periodicity");
  common(periodicity, true);
  periodicity->add_option("--l", c.l, "window shift l");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kInvalid;
  }

  for (CLI::App* s = &app; !s->get_subcommands().empty();) {
    s = s->get_subcommands().front();
    c.command.push_back(s->get_name());
    auto given = [&](const char* name) {
      const CLI::Option* o = s->get_option_no_throw(name);
      return o && o->count() > 0;
    };
    if (given("--p")) c.p = p;
    if (given("--max-steps")) c.max_steps = max_steps;
    if (given("--m")) c.m = m;
  }
  if (!target.empty()) {
    try {
      c.target = Exponent::parse(target);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kInvalid;
    }
  }
  return run(c, out, err);
}

}  // namespace closure::cli
