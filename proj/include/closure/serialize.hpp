#pragma once

// JSON forms of the library types. Scalars use their text forms
// ("n/d", "p^d:[..]", "W(p,m,d):[..]"); integers are accepted wherever a
// coefficient is expected.

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "closure/exponent.hpp"
#include "closure/galois_ring.hpp"
#include "closure/gfield.hpp"
#include "closure/hahn.hpp"
#include "closure/newton.hpp"
#include "closure/padic_series.hpp"
#include "closure/twistrec.hpp"

namespace closure::io {

using json = nlohmann::json;

inline constexpr const char* kSchema = "closure-forge/1";

json to_json(const Exponent& e);
Exponent exponent_from_json(const json& j);

json to_json(const FqElem& x);
FqElem fq_from_json(const json& j, const std::shared_ptr<FieldTower>& tower);

json to_json(const GrElem& x);
/// Integers need a default ring.
GrElem gr_from_json(const json& j, const std::shared_ptr<FieldTower>& tower, const RingPtr& default_ring = nullptr);

/// {"prec": "n/d", "terms": [["e", coeff], ...]}
json to_json(const FqSeries& x);
FqSeries fq_series_from_json(const json& j, const std::shared_ptr<FieldTower>& tower);

/// {"p": p, "N": "n/d", "terms": [["e", digit], ...]}
json to_json(const DigitSeries& x);
DigitSeries digit_series_from_json(const json& j, const std::shared_ptr<FieldTower>& tower);

/// {"ring": "W(p,m,d)", "d": [d_0, ..., d_k]}
json to_json(const Recurrence& r);
Recurrence recurrence_from_json(const json& j, const std::shared_ptr<FieldTower>& tower);
RingPtr ring_from_descriptor(const std::string& text, const std::shared_ptr<FieldTower>& tower);

json to_json(const Valuation& v);
json to_json(const NewtonPolygon& poly);
json to_json(const SabParams& s);
json to_json(const PeriodicityReport& r);

template <class S>
json root_to_json(const RootApprox<S>& r) {
  return json{{"value", to_json(r.value)},
              {"multiplicity", r.multiplicity},
              {"accuracy", to_json(r.accuracy)},
              {"valuation", to_json(r.valuation)},
              {"status", to_string(r.status)},
              {"exhausted", r.exhausted},
              {"steps", r.steps},
              {"certificate", {{"substitution_valuation", to_json(r.slope_reached)}}}};
}

}  // namespace closure::io
