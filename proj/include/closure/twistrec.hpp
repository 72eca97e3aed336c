#pragma once

// Twist-recurrent sequences over W_m(K):
//   d_0 c_n + d_1 c_{n+1}^s + ... + d_k c_{n+k}^{s^k} = 0,   s = Frobenius.
// Solutions are c_n = sum_i lambda_i^{s^-n} z_i with P(F) z_i = 0.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "closure/exponent.hpp"
#include "closure/galois_ring.hpp"
#include "closure/padic_series.hpp"

namespace closure {

class Recurrence {
 public:
  /// Coefficients d_0..d_k. A unit leading coefficient is divided out;
  /// anything else is rejected. Throws InvalidInput for k < 1.
  explicit Recurrence(std::vector<GrElem> coeffs);

  unsigned order() const { return static_cast<unsigned>(d_.size() - 1); }
  const std::vector<GrElem>& coeffs() const { return d_; }
  const RingPtr& ring() const { return d_.front().ring(); }
  bool d0_unit() const { return d_.front().is_unit(); }

  /// P(F) z = sum d_j z^{s^j}.
  GrElem apply(const GrElem& z) const;

  std::string to_string() const;

  friend bool operator==(const Recurrence& a, const Recurrence& b);

 private:
  std::vector<GrElem> d_;
};

struct SolutionBasis {
  std::vector<GrElem> z;
  RingPtr ring;
};

/// Basis of the solutions of P(F) z = 0 for the monic operator with lower
/// coefficients d_0..d_{n-1}. The residue degree grows until every lift
/// exists. Throws NotApplicable when d_0 is not a unit.
SolutionBasis solve_semilinear(const std::vector<GrElem>& lower);
SolutionBasis solve_semilinear(const Recurrence& r);

/// Elements with F_p-independent reductions whose Z/p^m span contains the
/// span of the input. All outputs share one ring.
std::vector<GrElem> saturate(const std::vector<GrElem>& elems);

/// The monic relation of order k annihilating every c_n = sum lambda_i^{s^-n} z_i.
/// Throws DependentSolutions when the reductions are dependent over F_p.
Recurrence recurrence_from_solutions(const std::vector<GrElem>& z);

Recurrence combine_sum(const Recurrence& a, const Recurrence& b);
Recurrence combine_product(const Recurrence& a, const Recurrence& b);

/// True iff the relation holds at every index n with n + k < seq.size().
bool check_recurrence(const std::vector<GrElem>& seq, const Recurrence& r);

/// c_n = sum_i lambda_i^{s^-n} z_i for n < length.
std::vector<GrElem> solution_sequence(const std::vector<GrElem>& basis, const std::vector<GrElem>& lambda,
                                      std::size_t length);

/// Relations over the residue field (length-1 rings), one per Witt
/// coordinate, satisfied by the coordinate sequences of every solution.
std::vector<Recurrence> split_to_components(const Recurrence& r);
/// One relation over W_m satisfied by every Witt vector sequence whose i-th
/// coordinates satisfy components[i].
Recurrence split_from_components(const std::vector<Recurrence>& components, unsigned m);

struct SabParams {
  long a = 1;
  long b = 0;
  friend bool operator==(const SabParams&, const SabParams&) = default;
};

/// q in S_{a,b} = {(n - sum b_i p^-i) / a : n >= 0, 0 <= b_i < p, sum b_i <= b}.
bool sab_contains(const Exponent& q, const SabParams& s, std::uint64_t p);

/// Digit sum of n - a q when a q has a p-power denominator and n = ceil(a q) >= 0.
std::optional<long> sab_digit_sum(const Exponent& q, long a, std::uint64_t p);

/// Least (a, b), a first, with every point of the support in S_{a,b}.
std::optional<SabParams> sab_fit(const std::vector<Exponent>& support, std::uint64_t p, long max_a = 64,
                                 long max_b = 64);

struct PeriodicityCaps {
  unsigned max_M = 64;
  unsigned max_N = 64;
  /// Shorter sequences are reported as insufficient.
  unsigned min_length = 8;
};

enum class WindowStatus { periodic, aperiodic, insufficient };

std::string to_string(WindowStatus s);

/// One extracted sequence c_n = f_m(1 - prefix - p^{l-n} tail), with
/// f_m(i) = x_{(m+i)/a}. Digits are listed from p^-1 (prefix) and from
/// p^-j (tail).
struct PeriodicityWindow {
  long m = 0;
  std::vector<unsigned> prefix;
  std::vector<unsigned> tail;
  std::size_t length = 0;
  WindowStatus status = WindowStatus::insufficient;
  unsigned M = 0;
  unsigned N = 0;
};

struct PeriodicityReport {
  std::optional<SabParams> params;
  long l = 0;
  std::vector<PeriodicityWindow> windows;
  /// No window is aperiodic within precision.
  bool periodic = false;
  unsigned M = 0;
  unsigned long N = 1;
};

/// Periodicity of the digit sequences along the S_{a,b} tails of x's
/// support. Verdicts hold within the precision of x only.
PeriodicityReport digit_periodicity(const DigitSeries& x, const SabParams& s, long l = 0, PeriodicityCaps caps = {});
/// Same, with (a, b) from sab_fit of the support.
PeriodicityReport digit_periodicity(const DigitSeries& x, long l = 0, PeriodicityCaps caps = {});

}  // namespace closure
