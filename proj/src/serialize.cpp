#include "closure/serialize.hpp"

#include <cstdio>
#include <string>

#include "closure/error.hpp"

namespace closure::io {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("missing field '") + key + "'");
  return j.at(key);
}

const json& array_field(const json& j, const char* key) {
  const json& a = field(j, key);
  if (!a.is_array()) throw InvalidInput(std::string("field '") + key + "' is not an array");
  return a;
}

template <class T>
T number(const json& j, const char* what) {
  if (!j.is_number_integer()) throw InvalidInput(std::string(what) + " must be an integer");
  return j.get<T>();
}

std::pair<Exponent, const json*> term(const json& t) {
  if (!t.is_array() || t.size() != 2) throw InvalidInput("a term must be a pair [exponent, coefficient]");
  return {exponent_from_json(t[0]), &t[1]};
}

}  // namespace

json to_json(const Exponent& e) { return e.to_string(); }

Exponent exponent_from_json(const json& j) {
  if (j.is_number_integer()) return Exponent(j.get<long>());
  if (j.is_string()) return Exponent::parse(j.get<std::string>());
  throw InvalidInput("exponent must be an integer or a string \"n/d\"");
}

json to_json(const FqElem& x) { return x.to_string(); }

FqElem fq_from_json(const json& j, const std::shared_ptr<FieldTower>& tower) {
  if (j.is_number_integer()) return tower->from_int(j.get<long>());
  if (j.is_string()) return parse_fq(j.get<std::string>(), tower);
  throw InvalidInput("field element must be an integer or a string \"p^d:[...]\"");
}

json to_json(const GrElem& x) { return x.to_string(); }

GrElem gr_from_json(const json& j, const std::shared_ptr<FieldTower>& tower, const RingPtr& default_ring) {
  if (j.is_number_integer()) {
    if (!default_ring) throw InvalidInput("integer ring element without a ring");
    return GrElem::from_int(default_ring, j.get<long long>());
  }
  if (j.is_string()) {
    GrElem x = parse_gr(j.get<std::string>(), tower);
    if (default_ring && x.m() != default_ring->m())
      throw RingMismatch(x.to_string() + " does not have length " + std::to_string(default_ring->m()));
    return x;
  }
  throw InvalidInput("ring element must be an integer or a string \"W(p,m,d):[...]\"");
}

json to_json(const FqSeries& x) {
  json terms = json::array();
  for (const auto& [e, c] : x.terms()) terms.push_back({to_json(e), to_json(c)});
  return json{{"prec", to_json(x.prec())}, {"terms", terms}};
}

FqSeries fq_series_from_json(const json& j, const std::shared_ptr<FieldTower>& tower) {
  std::vector<FqSeries::Term> terms;
  for (const auto& t : array_field(j, "terms")) {
    auto [e, c] = term(t);
    terms.emplace_back(e, fq_from_json(*c, tower));
  }
  return FqSeries(tower->from_int(0), std::move(terms), exponent_from_json(field(j, "prec")));
}

json to_json(const DigitSeries& x) {
  json terms = json::array();
  for (const auto& [e, c] : x.terms()) terms.push_back({to_json(e), to_json(c)});
  return json{{"p", x.p()}, {"N", to_json(x.N())}, {"terms", terms}};
}

DigitSeries digit_series_from_json(const json& j, const std::shared_ptr<FieldTower>& tower) {
  if (j.contains("p") && number<std::uint64_t>(j.at("p"), "p") != tower->p())
    throw RingMismatch("digit series over p=" + j.at("p").dump() + ", expected " + std::to_string(tower->p()));
  std::vector<DigitSeries::Term> terms;
  for (const auto& t : array_field(j, "terms")) {
    auto [e, c] = term(t);
    terms.emplace_back(e, fq_from_json(*c, tower));
  }
  return DigitSeries(tower, std::move(terms), exponent_from_json(field(j, "N")));
}

json to_json(const Recurrence& r) {
  json d = json::array();
  for (const auto& c : r.coeffs()) d.push_back(to_json(c));
  return json{{"ring", r.ring()->descriptor()}, {"d", d}};
}

RingPtr ring_from_descriptor(const std::string& text, const std::shared_ptr<FieldTower>& tower) {
  unsigned long p = 0, m = 0, d = 0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "W(%lu,%lu,%lu)%c", &p, &m, &d, &tail) != 3)
    throw InvalidInput("malformed ring descriptor '" + text + "'");
  if (p != tower->p()) throw RingMismatch("ring " + text + " has the wrong characteristic");
  if (m < 1 || d < 1) throw InvalidInput("ring " + text + " needs m, d >= 1");
  return tower->galois_ring(static_cast<unsigned>(m), static_cast<unsigned>(d));
}

Recurrence recurrence_from_json(const json& j, const std::shared_ptr<FieldTower>& tower) {
  const json& r = field(j, "ring");
  if (!r.is_string()) throw InvalidInput("field 'ring' must be a string");
  const RingPtr ring = ring_from_descriptor(r.get<std::string>(), tower);
  std::vector<GrElem> d;
  for (const auto& c : array_field(j, "d")) d.push_back(gr_from_json(c, tower, ring));
  if (d.empty()) throw InvalidInput("relation without coefficients");
  return Recurrence(std::move(d));
}

json to_json(const Valuation& v) { return json{{"value", to_json(v.value)}, {"determined", v.determined}}; }

json to_json(const NewtonPolygon& poly) {
  json segs = json::array();
  for (const auto& s : poly.segments)
    segs.push_back({{"slope", to_json(s.slope)}, {"length", s.length()}, {"determined", s.determined}});
  return segs;
}

json to_json(const SabParams& s) { return json{{"a", s.a}, {"b", s.b}}; }

json to_json(const PeriodicityReport& r) {
  json windows = json::array();
  for (const auto& w : r.windows)
    windows.push_back({{"m", w.m},
                       {"prefix", w.prefix},
                       {"tail", w.tail},
                       {"length", w.length},
                       {"status", to_string(w.status)},
                       {"M", w.M},
                       {"N", w.N}});
  return json{{"params", r.params ? to_json(*r.params) : json(nullptr)},
              {"l", r.l},
              {"windows", windows},
              {"periodic_within_precision", r.periodic},
              {"M", r.M},
              {"N", r.N}};
}

}  // namespace closure::io
