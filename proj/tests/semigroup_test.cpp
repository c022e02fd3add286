#include <semigraph/semigroup.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "test_util.hpp"

using namespace semigraph;

namespace {

FactoredElement nat(std::uint64_t n) { return factorize(n); }

PrimeSymbol sym(const std::string& s) { return PrimeSymbol::name(s); }

// Random element over a fixed pool; about a quarter of the draws are units.
FactoredElement random_element(std::mt19937_64& rng, const std::vector<PrimeSymbol>& pool) {
    std::uniform_int_distribution<int> exponent(0, 3);
    std::map<PrimeSymbol, std::uint64_t> exps;
    if (std::uniform_int_distribution<int>(0, 3)(rng) == 0) return FactoredElement::unit();
    for (const PrimeSymbol& p : pool) {
        const int e = exponent(rng);
        if (e > 0) exps.emplace(p, static_cast<std::uint64_t>(e));
    }
    return FactoredElement::from_exponents(std::move(exps));
}

std::vector<PrimeSymbol> naturals_pool() {
    return {PrimeSymbol::number(2), PrimeSymbol::number(3), PrimeSymbol::number(5),
            PrimeSymbol::number(7), PrimeSymbol::number(11), PrimeSymbol::number(13)};
}

std::vector<PrimeSymbol> free_pool() { return {sym("p"), sym("q"), sym("r"), sym("s")}; }

SemigroupContext free_context() {
    return SemigroupContext::free_fcsg({sym("p"), sym("q"), sym("r"), sym("s")});
}

}  // namespace

TEST_CASE("factorize produces exact prime decompositions", "[semigroup]") {
    const FactoredElement f360 = nat(360);
    const std::map<PrimeSymbol, std::uint64_t> expected{{PrimeSymbol::number(2), 3},
                                                        {PrimeSymbol::number(3), 2},
                                                        {PrimeSymbol::number(5), 1}};
    REQUIRE(f360.exponents() == expected);
    REQUIRE(f360.factor_count() == 6);

    REQUIRE(nat(1).is_unit());
    REQUIRE(nat(97).exponents() == std::map<PrimeSymbol, std::uint64_t>{{PrimeSymbol::number(97), 1}});
    REQUIRE_THROWS_AS(factorize(0), input_error);
}

TEST_CASE("factorize round-trips every natural below one million", "[semigroup]") {
    std::uint64_t failures = 0;
    for (std::uint64_t n = 1; n <= 1'000'000; ++n) {
        const FactoredElement f = factorize(n);
        if (evaluate(f) != n) ++failures;
        for (const auto& [symbol, exponent] : f.exponents()) {
            if (!symbol.is_number() || !detail::is_prime_u64(symbol.value()) || exponent == 0) ++failures;
        }
    }
    REQUIRE(failures == 0);
}

TEST_CASE("factorize handles large primes and semiprimes", "[semigroup]") {
    const std::uint64_t mersenne = 2305843009213693951ULL;  // 2^61 - 1
    const FactoredElement fm = factorize(mersenne);
    REQUIRE(fm.exponents() == std::map<PrimeSymbol, std::uint64_t>{{PrimeSymbol::number(mersenne), 1}});

    // Both factors sit above the trial division bound.
    const FactoredElement fs = factorize(1000036000099ULL);
    REQUIRE(fs.exponents() == std::map<PrimeSymbol, std::uint64_t>{{PrimeSymbol::number(1000003), 1},
                                                                   {PrimeSymbol::number(1000033), 1}});

    const std::uint64_t top = 18446744073709551615ULL;  // 2^64 - 1
    const FactoredElement ft = factorize(top);
    REQUIRE(evaluate(ft) == top);
    REQUIRE(ft.factor_count() == 7);
    for (const auto& [symbol, exponent] : ft.exponents()) {
        REQUIRE(detail::is_prime_u64(symbol.value()));
        REQUIRE(exponent == 1);
    }

    const std::uint64_t big_prime = 999999999989ULL;
    REQUIRE(factorize(big_prime).exponents() ==
            std::map<PrimeSymbol, std::uint64_t>{{PrimeSymbol::number(big_prime), 1}});
}

TEST_CASE("multiply, gcd, divides and set_product follow exponent arithmetic", "[semigroup]") {
    REQUIRE(multiply(nat(12), nat(18)) == nat(216));
    REQUIRE(gcd(nat(12), nat(18)) == nat(6));
    REQUIRE(gcd(nat(4), nat(9)).is_unit());
    REQUIRE(divides(nat(6), nat(12)));
    REQUIRE_FALSE(divides(nat(8), nat(12)));
    REQUIRE(set_product({nat(6), nat(10), nat(15)}) == nat(900));
    REQUIRE(set_product({}).is_unit());
    REQUIRE(set_product({nat(42)}) == nat(42));
}

TEST_CASE("gcd agrees with integer gcd on evaluated naturals", "[semigroup]") {
    auto rng = testutil::seeded_rng(11);
    std::uniform_int_distribution<std::uint64_t> draw(1, 1'000'000'000);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::uint64_t x = draw(rng);
        const std::uint64_t y = draw(rng);
        REQUIRE(evaluate(gcd(factorize(x), factorize(y))) == std::gcd(x, y));
    }
}

TEST_CASE("a product is a unit exactly when both factors are units", "[semigroup]") {
    for (const bool use_free : {false, true}) {
        const auto pool = use_free ? free_pool() : naturals_pool();
        auto rng = testutil::seeded_rng(use_free ? 21 : 22);
        for (int trial = 0; trial < 10'000; ++trial) {
            const FactoredElement a = random_element(rng, pool);
            const FactoredElement b = random_element(rng, pool);
            REQUIRE(is_unit(multiply(a, b)) == (is_unit(a) && is_unit(b)));
        }
    }
}

TEST_CASE("a shared non-unit divisor survives multiplication", "[semigroup]") {
    for (const bool use_free : {false, true}) {
        const auto pool = use_free ? free_pool() : naturals_pool();
        auto rng = testutil::seeded_rng(use_free ? 31 : 32);
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        for (int trial = 0; trial < 10'000; ++trial) {
            const FactoredElement shared = FactoredElement::single(pool[pick(rng)]);
            const FactoredElement a1 = multiply(shared, random_element(rng, pool));
            const FactoredElement a2 = multiply(shared, random_element(rng, pool));
            REQUIRE_FALSE(is_unit(gcd(a1, a2)));
            const FactoredElement a3 = random_element(rng, pool);
            const FactoredElement a4 = random_element(rng, pool);
            REQUIRE_FALSE(is_unit(gcd(multiply(a1, a3), multiply(a2, a4))));
        }
    }
}

TEST_CASE("gcd satisfies lattice laws on random elements", "[semigroup]") {
    const auto pool = naturals_pool();
    auto rng = testutil::seeded_rng(41);
    for (int trial = 0; trial < 2000; ++trial) {
        const FactoredElement a = random_element(rng, pool);
        const FactoredElement b = random_element(rng, pool);
        const FactoredElement c = random_element(rng, pool);
        REQUIRE(gcd(a, b) == gcd(b, a));
        REQUIRE(gcd(gcd(a, b), c) == gcd(a, gcd(b, c)));
        REQUIRE(gcd(a, a) == a);
        REQUIRE(gcd(a, FactoredElement::unit()).is_unit());
        REQUIRE(divides(gcd(a, b), a));
        REQUIRE(divides(gcd(a, b), b));
        REQUIRE(gcd(multiply(a, c), multiply(b, c)) == multiply(gcd(a, b), c));
    }
}

TEST_CASE("prime symbol names are validated and ordered after numbers", "[semigroup]") {
    REQUIRE_THROWS_AS(PrimeSymbol::name(""), input_error);
    REQUIRE_THROWS_AS(PrimeSymbol::name("123"), input_error);
    REQUIRE_THROWS_AS(PrimeSymbol::name("a*b"), input_error);
    REQUIRE_THROWS_AS(PrimeSymbol::name("a^2"), input_error);
    REQUIRE(sym("p2").text() == "p2");
    REQUIRE(PrimeSymbol::number(7).text() == "7");
    REQUIRE(PrimeSymbol::number(999983) < sym("a"));
    REQUIRE(PrimeSymbol::number(3) < PrimeSymbol::number(5));
    REQUIRE(sym("p") < sym("q"));
}

TEST_CASE("from_exponents rejects zero exponents", "[semigroup]") {
    REQUIRE_THROWS_AS(FactoredElement::from_exponents({{PrimeSymbol::number(2), 0}}), input_error);
    REQUIRE(FactoredElement::single(PrimeSymbol::number(2)).factor_count() == 1);
    REQUIRE_THROWS_AS(FactoredElement::single(PrimeSymbol::number(2), 0), input_error);
}

TEST_CASE("contexts validate their operands", "[semigroup]") {
    const SemigroupContext nats = SemigroupContext::naturals();
    REQUIRE(nats.admits(PrimeSymbol::number(2)));
    REQUIRE_FALSE(nats.admits(PrimeSymbol::number(4)));
    REQUIRE_FALSE(nats.admits(sym("p")));
    REQUIRE_THROWS_AS(nats.multiply(FactoredElement::single(sym("p")), nat(2)), input_error);
    REQUIRE_THROWS_AS(nats.require_valid(FactoredElement::single(PrimeSymbol::number(6))), input_error);

    const SemigroupContext free = free_context();
    REQUIRE(free.admits(sym("p")));
    REQUIRE_FALSE(free.admits(sym("t")));
    REQUIRE_FALSE(free.admits(PrimeSymbol::number(2)));
    REQUIRE_THROWS_AS(free.gcd(FactoredElement::single(sym("t")), FactoredElement::unit()), input_error);
    REQUIRE_THROWS_AS(free.factorize(12), input_error);
    REQUIRE_THROWS_AS(SemigroupContext::free_fcsg({PrimeSymbol::number(2)}), input_error);

    REQUIRE(nats.gcd(nat(12), nat(18)) == nat(6));
    REQUIRE(free.set_product({FactoredElement::single(sym("p")), FactoredElement::single(sym("q"))}) ==
            FactoredElement::from_exponents({{sym("p"), 1}, {sym("q"), 1}}));
}

TEST_CASE("evaluate reports 64-bit overflow and symbolic elements as empty", "[semigroup]") {
    REQUIRE(evaluate(FactoredElement::single(PrimeSymbol::number(2), 63)) == (std::uint64_t{1} << 63));
    REQUIRE_FALSE(evaluate(FactoredElement::single(PrimeSymbol::number(2), 64)).has_value());
    REQUIRE_FALSE(evaluate(FactoredElement::single(sym("p"))).has_value());
    REQUIRE(evaluate(factorize(18446744073709551615ULL)) == 18446744073709551615ULL);
    REQUIRE(evaluate(FactoredElement::unit()) == 1);
    REQUIRE_FALSE(evaluate(multiply(factorize(18446744073709551615ULL), nat(2))).has_value());

    const FactoredElement huge = FactoredElement::single(PrimeSymbol::number(2),
                                                         std::numeric_limits<std::uint64_t>::max());
    REQUIRE_THROWS_AS(multiply(huge, FactoredElement::single(PrimeSymbol::number(2))), resource_error);
}

TEST_CASE("factored_text and canonical_label render canonical forms", "[semigroup]") {
    REQUIRE(factored_text(nat(360)) == "2^3*3^2*5");
    REQUIRE(factored_text(FactoredElement::unit()) == "e");
    REQUIRE(factored_text(FactoredElement::from_exponents({{sym("p"), 1}, {sym("q"), 2}})) == "p*q^2");
    REQUIRE(canonical_label(nat(360)) == "360");
    REQUIRE(canonical_label(FactoredElement::unit()) == "1");
    REQUIRE(canonical_label(FactoredElement::single(PrimeSymbol::number(2), 64)) == "2^64");
    REQUIRE(canonical_label(FactoredElement::single(sym("p"))) == "p");
}

TEST_CASE("output order is numeric where values exist", "[semigroup]") {
    REQUIRE(output_less(nat(9), nat(10)));
    REQUIRE_FALSE(output_less(nat(10), nat(9)));
    REQUIRE(nat(10) < nat(9));  // canonical form order differs from value order
    REQUIRE(output_less(nat(2), FactoredElement::single(sym("p"))) ==
            (nat(2) < FactoredElement::single(sym("p"))));
}

TEST_CASE("backend names are stable", "[semigroup]") {
    REQUIRE(backend_name(Backend::naturals) == "naturals");
    REQUIRE(backend_name(Backend::free_fcsg) == "free");
    REQUIRE(SemigroupContext::naturals().backend() == Backend::naturals);
    REQUIRE(free_context().prime_universe().size() == 4);
}
