#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pfsched {

using Rat = mpq_class;
using Int = mpz_class;

// Exit-code contract: ParseError -> 1, SolverError -> 2, anything else -> 3.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw ParseError("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline Rat make_rat(long num, long den) { return make_rat(Int(num), Int(den)); }

// Accepts "a", "a/b", and decimal forms like "-1.25" or ".5". No exponents.
inline Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw ParseError("empty rational literal");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (num.empty() || den.empty()) throw ParseError("malformed fraction: " + s);
    try {
      return make_rat(Int(num), Int(den));
    } catch (const std::invalid_argument&) {
      throw ParseError("malformed fraction: " + s);
    }
  }
  auto dot = s.find('.');
  std::string digits = s;
  size_t frac_len = 0;
  if (dot != std::string::npos) {
    frac_len = s.size() - dot - 1;
    digits = s.substr(0, dot) + s.substr(dot + 1);
    if (digits.empty() || digits == "-" || digits == "+") throw ParseError("malformed decimal: " + s);
  }
  try {
    Int num(digits);
    Int den = 1;
    for (size_t i = 0; i < frac_len; ++i) den *= 10;
    return make_rat(num, den);
  } catch (const std::invalid_argument&) {
    throw ParseError("malformed rational literal: " + s);
  }
}

inline std::string rat_str(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline double rat_dbl(const Rat& q) { return q.get_d(); }

// Exact binary expansion of the double; no rounding involved.
inline Rat rat_exact(double d) { return Rat(d); }

inline Int floor_rat(const Rat& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

inline Int ceil_rat(const Rat& q) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

inline Int lcm_int(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int denominator_lcm(const std::vector<Rat>& vals) {
  Int m = 1;
  for (const auto& v : vals) m = lcm_int(m, v.get_den());
  return m;
}

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

inline Rat rat_max(const Rat& a, const Rat& b) { return a < b ? b : a; }
inline Rat rat_min(const Rat& a, const Rat& b) { return a < b ? a : b; }

}  // namespace pfsched
