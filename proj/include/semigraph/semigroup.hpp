#pragma once
// Arithmetic of factorial commutative semigroups in canonical factored
// form: every element is a unit tag times a finite product of primes with
// positive exponents.  Two backends share the representation: the
// multiplicative naturals, whose prime symbols are prime numbers and which
// comes with a factorization routine, and a free FCSG over named symbols.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "semigraph/errors.hpp"

namespace semigraph {

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e > 0) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin; the fixed base set decides every 64-bit input.
inline bool is_prime_u64(std::uint64_t n) {
  constexpr std::uint64_t bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (n < 2) return false;
  for (std::uint64_t p : bases) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : bases) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Primes below 10^6, generated once.  Enough to trial-divide any 64-bit
// input down to a cofactor that is prime or a product of two large primes.
inline const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    constexpr std::uint32_t limit = 1'000'000;
    std::vector<bool> composite(limit, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i < limit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j < limit; j += i)
        composite[static_cast<std::uint32_t>(j)] = true;
    }
    return out;
  }();
  return primes;
}

// Pollard rho with fixed start values, so repeated runs factor identically.
// Only reached by composites with no factor below the trial-division bound.
inline std::uint64_t pollard_rho(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    auto step = [&](std::uint64_t v) {
      std::uint64_t w = mulmod_u64(v, v, n);
      w += c;
      if (w >= n || w < c) w -= n;
      return w;
    };
    std::uint64_t x = 2, y = 2, d = 1;
    do {
      x = step(x);
      y = step(step(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    } while (d == 1);
    if (d != n) return d;
  }
}

}  // namespace detail

// A prime element of the semigroup.  In the naturals backend the identity
// is the prime number itself; in the free backend an interned name.
// Ordering puts numeric symbols first (by value), then names (lexicographic).
class PrimeSymbol {
 public:
  static PrimeSymbol number(std::uint64_t p) { return PrimeSymbol(p); }

  // Names may not be empty, purely numeric, or contain '*' / '^'; those
  // would collide with the canonical textual rendering of elements.
  static PrimeSymbol name(std::string s) {
    if (s.empty()) throw input_error("prime symbol name must be nonempty");
    if (s.find('*') != std::string::npos || s.find('^') != std::string::npos)
      throw input_error("prime symbol name must not contain '*' or '^': " + s);
    if (std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw input_error("prime symbol name must not be purely numeric: " + s);
    return PrimeSymbol(std::move(s));
  }

  bool is_number() const { return std::holds_alternative<std::uint64_t>(id_); }
  std::uint64_t value() const { return std::get<std::uint64_t>(id_); }
  const std::string& label() const { return std::get<std::string>(id_); }

  std::string text() const {
    return is_number() ? std::to_string(value()) : label();
  }

  friend auto operator<=>(const PrimeSymbol&, const PrimeSymbol&) = default;

 private:
  explicit PrimeSymbol(std::uint64_t p) : id_(p) {}
  explicit PrimeSymbol(std::string s) : id_(std::move(s)) {}

  std::variant<std::uint64_t, std::string> id_;
};

// The unit group is trivial in both backends, so composition is a no-op.
// The tag exists so the canonical form carries its epsilon factor.
struct UnitTag {
  friend constexpr bool operator==(UnitTag, UnitTag) { return true; }
  friend constexpr std::strong_ordering operator<=>(UnitTag, UnitTag) {
    return std::strong_ordering::equal;
  }
};

constexpr UnitTag compose(UnitTag, UnitTag) { return {}; }

// Canonical form of a semigroup element: unit tag plus a sparse exponent
// map.  No stored exponent is zero; the element is a unit iff the map is
// empty.  Value type; ordering is lexicographic on the sorted factored form.
class FactoredElement {
 public:
  FactoredElement() = default;  // the neutral element e

  static FactoredElement unit() { return {}; }

  static FactoredElement from_exponents(std::map<PrimeSymbol, std::uint64_t> exponents) {
    for (const auto& [symbol, exponent] : exponents) {
      if (exponent == 0)
        throw input_error("exponent of " + symbol.text() + " must be >= 1");
    }
    FactoredElement out;
    out.exponents_ = std::move(exponents);
    return out;
  }

  static FactoredElement single(PrimeSymbol symbol, std::uint64_t exponent = 1) {
    return from_exponents({{std::move(symbol), exponent}});
  }

  bool is_unit() const { return exponents_.empty(); }

  const std::map<PrimeSymbol, std::uint64_t>& exponents() const { return exponents_; }

  UnitTag unit_tag() const { return unit_tag_; }

  // Total number of prime factors with multiplicity.
  std::uint64_t factor_count() const {
    std::uint64_t r = 0;
    for (const auto& [symbol, exponent] : exponents_) r += exponent;
    return r;
  }

  friend auto operator<=>(const FactoredElement&, const FactoredElement&) = default;

 private:
  std::map<PrimeSymbol, std::uint64_t> exponents_;
  [[no_unique_address]] UnitTag unit_tag_;
};

inline bool is_unit(const FactoredElement& a) { return a.is_unit(); }

inline FactoredElement multiply(const FactoredElement& a, const FactoredElement& b) {
  std::map<PrimeSymbol, std::uint64_t> exps = a.exponents();
  for (const auto& [symbol, exponent] : b.exponents()) {
    std::uint64_t& slot = exps[symbol];
    if (slot > std::numeric_limits<std::uint64_t>::max() - exponent)
      throw resource_error("multiply: exponent overflow at symbol " + symbol.text());
    slot += exponent;
  }
  FactoredElement out = FactoredElement::from_exponents(std::move(exps));
  (void)compose(a.unit_tag(), b.unit_tag());
  return out;
}

// Pointwise minimum of exponents.  The result carries the identity unit
// tag: the gcd is defined only up to units and we fix the unit-free
// representative.
inline FactoredElement gcd(const FactoredElement& a, const FactoredElement& b) {
  std::map<PrimeSymbol, std::uint64_t> exps;
  auto ia = a.exponents().begin();
  auto ib = b.exponents().begin();
  while (ia != a.exponents().end() && ib != b.exponents().end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      exps.emplace(ia->first, std::min(ia->second, ib->second));
      ++ia;
      ++ib;
    }
  }
  return FactoredElement::from_exponents(std::move(exps));
}

// a | b, i.e. every exponent of a is <= the matching exponent of b.
inline bool divides(const FactoredElement& a, const FactoredElement& b) {
  const auto& bexps = b.exponents();
  for (const auto& [symbol, exponent] : a.exponents()) {
    auto it = bexps.find(symbol);
    if (it == bexps.end() || it->second < exponent) return false;
  }
  return true;
}

// m(M): product over a finite collection, m of the empty collection is e.
inline FactoredElement set_product(const std::vector<FactoredElement>& elements) {
  FactoredElement acc;
  for (const FactoredElement& x : elements) acc = multiply(acc, x);
  return acc;
}

// The natural number an element denotes, when every symbol is numeric and
// the product fits 64 bits.
inline std::optional<std::uint64_t> evaluate(const FactoredElement& a) {
  constexpr auto max64 = std::numeric_limits<std::uint64_t>::max();
  __uint128_t acc = 1;
  for (const auto& [symbol, exponent] : a.exponents()) {
    if (!symbol.is_number()) return std::nullopt;
    if (exponent >= 64) return std::nullopt;  // 2^64 already overflows
    for (std::uint64_t i = 0; i < exponent; ++i) {
      acc *= symbol.value();
      if (acc > max64) return std::nullopt;
    }
  }
  return static_cast<std::uint64_t>(acc);
}

// Sorted factored rendering: "2^3*3^2*5", "p*q^2", "e" for the unit.
inline std::string factored_text(const FactoredElement& a) {
  if (a.is_unit()) return "e";
  std::string out;
  for (const auto& [symbol, exponent] : a.exponents()) {
    if (!out.empty()) out += '*';
    out += symbol.text();
    if (exponent != 1) {
      out += '^';
      out += std::to_string(exponent);
    }
  }
  return out;
}

// Canonical string identity of an element, used for vertex labels and JSON
// keys.  Decimal value when the element denotes a 64-bit natural, the
// factored rendering otherwise.  Injective across each backend.
inline std::string canonical_label(const FactoredElement& a) {
  if (auto v = evaluate(a)) return std::to_string(*v);
  return factored_text(a);
}

// Factorization in the naturals backend.  Trial division by primes below
// 10^6, then deterministic Miller-Rabin plus Pollard rho on the cofactor.
inline FactoredElement factorize(std::uint64_t n) {
  if (n == 0)
    throw input_error("factorize: 0 is not an element of the multiplicative naturals");
  std::map<PrimeSymbol, std::uint64_t> exps;
  for (std::uint32_t p : detail::small_primes()) {
    if (static_cast<std::uint64_t>(p) * p > n) break;
    while (n % p == 0) {
      n /= p;
      ++exps[PrimeSymbol::number(p)];
    }
  }
  if (n > 1) {
    std::vector<std::uint64_t> pending{n};
    while (!pending.empty()) {
      std::uint64_t m = pending.back();
      pending.pop_back();
      if (detail::is_prime_u64(m)) {
        ++exps[PrimeSymbol::number(m)];
        continue;
      }
      std::uint64_t f = detail::pollard_rho(m);
      pending.push_back(f);
      pending.push_back(m / f);
    }
  }
  return FactoredElement::from_exponents(std::move(exps));
}

enum class Backend { naturals, free_fcsg };

inline std::string backend_name(Backend b) {
  return b == Backend::naturals ? "naturals" : "free";
}

// Which semigroup the elements live in.  Immutable after construction; all
// operations validate their operands against the backend before computing.
class SemigroupContext {
 public:
  static SemigroupContext naturals() { return SemigroupContext(Backend::naturals, {}); }

  static SemigroupContext free_fcsg(std::set<PrimeSymbol> universe) {
    for (const PrimeSymbol& p : universe) {
      if (p.is_number())
        throw input_error("free FCSG prime universe must consist of named symbols");
    }
    return SemigroupContext(Backend::free_fcsg, std::move(universe));
  }

  Backend backend() const { return backend_; }

  const std::set<PrimeSymbol>& prime_universe() const { return universe_; }

  bool admits(const PrimeSymbol& p) const {
    if (backend_ == Backend::naturals)
      return p.is_number() && detail::is_prime_u64(p.value());
    return !p.is_number() && universe_.count(p) > 0;
  }

  void require_valid(const FactoredElement& a) const {
    for (const auto& [symbol, exponent] : a.exponents()) {
      if (!admits(symbol))
        throw input_error("symbol " + symbol.text() + " is not a prime of the " +
                          backend_name(backend_) + " backend context");
    }
  }

  FactoredElement factorize(std::uint64_t n) const {
    if (backend_ != Backend::naturals)
      throw input_error("factorize requires the naturals backend");
    return semigraph::factorize(n);
  }

  FactoredElement multiply(const FactoredElement& a, const FactoredElement& b) const {
    require_valid(a);
    require_valid(b);
    return semigraph::multiply(a, b);
  }

  FactoredElement gcd(const FactoredElement& a, const FactoredElement& b) const {
    require_valid(a);
    require_valid(b);
    return semigraph::gcd(a, b);
  }

  FactoredElement set_product(const std::vector<FactoredElement>& elements) const {
    for (const FactoredElement& x : elements) require_valid(x);
    return semigraph::set_product(elements);
  }

 private:
  SemigroupContext(Backend backend, std::set<PrimeSymbol> universe)
      : backend_(backend), universe_(std::move(universe)) {}

  Backend backend_;
  std::set<PrimeSymbol> universe_;
};

// Ordering used when emitting element collections: numeric value for
// naturals elements, canonical form order otherwise.
inline bool output_less(const FactoredElement& a, const FactoredElement& b) {
  auto va = evaluate(a);
  auto vb = evaluate(b);
  if (va && vb) return *va < *vb;
  return a < b;
}

}  // namespace semigraph
