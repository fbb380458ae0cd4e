#include <doctest.h>

#include <cmath>
#include <limits>
#include <set>

#include "ffcone/harmonic.hpp"
#include "ffcone/operators.hpp"
#include "ffcone/rng.hpp"
#include "oracles.hpp"

using namespace ffcone;

namespace {

FunctionOnSpace random_on_cone(const ConeOperator& op, std::uint64_t seed) {
    Rng rng(seed);
    FunctionOnSpace h(op.field(), op.dim(), Side::SpaceDX);
    for (std::uint64_t idx : op.cone().points()) h[idx] = rng.unit_complex();
    return h;
}

}  // namespace

TEST_CASE("restricted averaging of simple inputs") {
    const FieldSpec F = FieldSpec::make(3, 1);
    const ConeOperator op(F, 3);

    // averaging a constant reproduces it
    const auto ones = FunctionOnSpace::constant(F, 3, Side::SpaceDX, 1.0);
    for (const cplx v : op.apply(ones)) CHECK(std::abs(v - 1.0) < 1e-11);

    // a point mass spreads to 1/|C| on the cone, using C = -C
    const auto delta = FunctionOnSpace::delta(F, 3, Side::SpaceDX);
    const double expected = 1.0 / static_cast<double>(op.cone().cardinality());
    for (const cplx v : op.apply(delta)) CHECK(std::abs(v - expected) < 1e-12);
}

TEST_CASE("transform path agrees with the direct double sum") {
    for (const auto [p, e, d] : {std::tuple{3, 1, 3}, std::tuple{3, 1, 4}, std::tuple{5, 1, 3}}) {
        const FieldSpec F = FieldSpec::make(p, e);
        const ConeOperator op(F, d);
        for (int t = 0; t < 4; ++t) {
            const auto f = random_function(F, d, Side::SpaceDX, mix_seed(0xa11, t));
            const auto fast = op.apply(f);
            const auto slow = oracles::restricted_average_naive(f, op.cone());
            for (std::size_t i = 0; i < fast.size(); ++i)
                CHECK(std::abs(fast[i] - slow[i]) < 1e-10);

            const auto h = random_on_cone(op, mix_seed(0xa12, t));
            CHECK(oracles::max_gap(op.apply_adjoint(h),
                                   oracles::adjoint_naive(h, op.cone())) < 1e-10);
        }
    }
}

TEST_CASE("adjoint: duality identity and support checking") {
    const FieldSpec F = FieldSpec::make(3, 1);
    const ConeOperator op(F, 4);
    const auto& pts = op.cone().points();

    for (int t = 0; t < 6; ++t) {
        const auto f = random_function(F, 4, Side::SpaceDX, mix_seed(0xd0a, t));
        const auto h = random_on_cone(op, mix_seed(0xd0b, t));

        // <A_C f, h>_sigma = <f, A_C^* h>_dx
        const auto af = op.apply(f);
        cplx lhs{0, 0};
        for (std::size_t i = 0; i < pts.size(); ++i) lhs += af[i] * std::conj(h[pts[i]]);
        lhs /= static_cast<double>(pts.size());
        const cplx rhs = inner_product(f, op.apply_adjoint(h));
        CHECK(std::abs(lhs - rhs) < 1e-10);
    }

    // h = 0 maps to 0
    const FunctionOnSpace zero(F, 4, Side::SpaceDX);
    CHECK(max_abs(op.apply_adjoint(zero)) == 0.0);

    // off-cone support is rejected
    FunctionOnSpace bad(F, 4, Side::SpaceDX);
    std::uint64_t off = 0;
    while (op.cone().contains(off)) ++off;
    bad[off] = 1.0;
    CHECK_THROWS_WITH_AS(op.apply_adjoint(bad), doctest::Contains("SupportViolation"),
                         std::invalid_argument);
}

TEST_CASE("adjoint of the cone indicator against the correlation formula") {
    const FieldSpec F = FieldSpec::make(3, 1);
    const int d = 3;
    const ConeOperator op(F, d);
    const auto image = op.apply_adjoint(op.cone().indicator(Side::SpaceDX));
    // A_C^* 1 (y) = (q^d/|C|^2) |C intersect (C+y)|
    const double card = static_cast<double>(op.cone().cardinality());
    for (std::uint64_t y = 0; y < image.size(); ++y) {
        const auto yc = decode_point(F, d, y);
        int overlap = 0;
        for (std::uint64_t c : op.cone().points()) {
            auto xc = decode_point(F, d, c);
            for (int i = 0; i < d; ++i) xc[i] = F.add(xc[i], yc[i]);
            if (op.cone().contains(encode_point(F, xc))) ++overlap;
        }
        CHECK(std::abs(image[y] - 27.0 * overlap / (card * card)) < 1e-9);
    }
}

TEST_CASE("both kernel decompositions reconstruct their operators") {
    for (const auto [p, e] : {std::pair{3, 1}, std::pair{5, 1}}) {
        const FieldSpec F = FieldSpec::make(p, e);
        const ConeOperator op(F, 4);
        for (int t = 0; t < 5; ++t) {
            const auto f = random_function(F, 4, Side::SpaceDX, mix_seed(0xdec, t));
            CHECK(op.decompose_forward(f).residual < 1e-10);
            const auto h = random_on_cone(op, mix_seed(0xdad, t));
            CHECK(op.decompose_adjoint(h).residual < 1e-10);
        }

        // constants annihilate the oscillatory part: K(0) = 0
        const auto ones = FunctionOnSpace::constant(F, 4, Side::SpaceDX, 1.0);
        CHECK(max_abs(op.decompose_forward(ones).oscillatory) < 1e-10);
    }
}

TEST_CASE("ratio: constants, scale invariance, sup-norm contraction") {
    const FieldSpec F = FieldSpec::make(3, 1);
    const ConeOperator op(F, 3);
    const auto ones = FunctionOnSpace::constant(F, 3, Side::SpaceDX, 1.0);

    for (const auto& pair :
         {ExponentPair(Rational(1, 2), Rational(1, 2)), ExponentPair(Rational(2, 3), Rational(1, 3)),
          ExponentPair(Rational(0), Rational(0)), ExponentPair(Rational(1), Rational(1))}) {
        CHECK(op.ratio(ones, pair, Direction::Forward) == doctest::Approx(1.0));
    }

    const ExponentPair sup_pair(Rational(0), Rational(0));
    Rng rng(7);
    for (int t = 0; t < 8; ++t) {
        auto f = random_function(F, 3, Side::SpaceDX, mix_seed(0x5ca1e, t));
        CHECK(op.ratio(f, sup_pair, Direction::Forward) <= 1.0 + 1e-12);

        const ExponentPair pair(Rational(3, 4), Rational(1, 4));
        const double r0 = op.ratio(f, pair, Direction::Forward);
        const double alpha = 0.25 + 3.0 * rng.unit();
        for (std::uint64_t i = 0; i < f.size(); ++i) f[i] *= alpha;
        CHECK(op.ratio(f, pair, Direction::Forward) == doctest::Approx(r0).epsilon(1e-12));
    }

    const FunctionOnSpace zero(F, 3, Side::SpaceDX);
    CHECK_THROWS_WITH_AS(op.ratio(zero, sup_pair, Direction::Forward),
                         doctest::Contains("ZeroFunction"), std::invalid_argument);
}

TEST_CASE("l2 operator norm: two routes agree and bound ratios") {
    const FieldSpec F = FieldSpec::make(3, 1);
    const ConeOperator op(F, 3);
    const auto norm = op.l2_opnorm();
    CHECK(std::abs(norm.power_iteration - norm.dense_svd) < 1e-8);
    CHECK(norm.value >= 1.0 - 1e-12);  // the constant function is a witness

    const ExponentPair l2(Rational(1, 2), Rational(1, 2));
    for (int t = 0; t < 10; ++t) {
        const auto f = random_function(F, 3, Side::SpaceDX, mix_seed(0xb0b, t));
        CHECK(op.ratio(f, l2, Direction::Forward) <= norm.value + 1e-8);
    }

    const FieldSpec f5 = FieldSpec::make(5, 1);
    const ConeOperator big(f5, 6);
    CHECK_THROWS_WITH_AS(big.l2_opnorm(), doctest::Contains("TooLarge"), std::invalid_argument);
}

TEST_CASE("family generation") {
    const FieldSpec F = FieldSpec::make(5, 1);
    const ConeOperator op(F, 4);

    const auto delta = generate_family(TestFamily::delta(), op);
    REQUIRE(delta.size() == 1);
    CHECK(std::abs(delta[0].f[0] - 1.0) == 0.0);
    CHECK(lp_norm(delta[0].f, 1.0) == doctest::Approx(std::pow(5.0, -4)));

    const auto cone = generate_family(TestFamily::cone_indicator(), op);
    CHECK(lp_norm(cone[0].f, 1.0) ==
          doctest::Approx(static_cast<double>(op.cone().cardinality()) / 625.0));

    // dyadic steps: deterministic, disjoint, sizes follow the schedule
    const auto fam = TestFamily::dyadic_step(3, 1.25, 7);
    const auto once = generate_family(fam, op);
    const auto twice = generate_family(fam, op);
    REQUIRE(once.size() == 1);
    CHECK(once[0].id == twice[0].id);
    CHECK(oracles::max_gap(once[0].f, twice[0].f) == 0.0);
    std::set<double> levels;
    for (std::uint64_t i = 0; i < once[0].f.size(); ++i) {
        const double v = once[0].f[i].real();
        if (v != 0.0) levels.insert(v);
    }
    CHECK(levels.size() == 3);  // weights 1, 1/2, 1/4 all appear

    // adjoint families stay on the cone
    TestFamily on_cone = TestFamily::random_set(40, 3);
    on_cone.on_cone = true;
    for (const auto& member : generate_family(on_cone, op))
        for (std::uint64_t i = 0; i < member.f.size(); ++i)
            if (member.f[i] != cplx{0.0, 0.0}) CHECK(op.cone().contains(i));

    CHECK_THROWS_WITH_AS(generate_family(TestFamily::random_set(0, 1), op),
                         doctest::Contains("BadParams"), std::invalid_argument);
}

TEST_CASE("restricted averaging is linear") {
    const FieldSpec F = FieldSpec::make(3, 1);
    const ConeOperator op(F, 3);
    const auto f = random_function(F, 3, Side::SpaceDX, 101);
    const auto g = random_function(F, 3, Side::SpaceDX, 102);
    const cplx alpha{0.7, -0.3}, beta{-1.2, 0.45};
    FunctionOnSpace combo(F, 3, Side::SpaceDX);
    for (std::uint64_t i = 0; i < combo.size(); ++i) combo[i] = alpha * f[i] + beta * g[i];
    const auto af = op.apply(f);
    const auto ag = op.apply(g);
    const auto ac = op.apply(combo);
    for (std::size_t i = 0; i < ac.size(); ++i)
        CHECK(std::abs(ac[i] - (alpha * af[i] + beta * ag[i])) < 1e-10);
}

TEST_CASE("decompositions of the zero function vanish") {
    const FieldSpec F = FieldSpec::make(3, 1);
    const ConeOperator op(F, 4);
    const FunctionOnSpace zero(F, 4, Side::SpaceDX);
    const auto dec = op.decompose_adjoint(zero);
    CHECK(max_abs(dec.oscillatory) == 0.0);
    CHECK(max_abs(dec.background) == 0.0);
    CHECK(dec.residual == 0.0);
}

TEST_CASE("best_ratio of the constant family is one") {
    const FieldSpec F = FieldSpec::make(3, 1);
    const ConeOperator op(F, 3);
    TestFamily constant;
    constant.kind = TestFamily::Kind::Custom;
    constant.custom_values.assign(point_count(F, 3), cplx{1.0, 0.0});
    for (const auto& pair :
         {ExponentPair(Rational(1, 2), Rational(1, 2)), ExponentPair(Rational(0), Rational(0))})
        CHECK(best_ratio({constant}, pair, Direction::Forward, op).ratio ==
              doctest::Approx(1.0));
}

TEST_CASE("best_ratio picks the witness") {
    const FieldSpec F = FieldSpec::make(3, 1);
    const ConeOperator op(F, 4);
    const ExponentPair pair(Rational(3, 4), Rational(1, 2));
    const auto best =
        best_ratio({TestFamily::delta(), TestFamily::cone_indicator()}, pair, Direction::Forward, op);
    CHECK(best.ratio > 0.0);
    CHECK_FALSE(best.family_id.empty());
    CHECK(best.ratio >= op.ratio(FunctionOnSpace::delta(F, 4, Side::SpaceDX), pair,
                                 Direction::Forward) - 1e-12);
}

TEST_CASE("refine_ratio never loses ground") {
    const FieldSpec F = FieldSpec::make(3, 1);
    const ConeOperator op(F, 3);
    auto f = FunctionOnSpace::indicator(F, 3, Side::SpaceDX, op.cone().points());
    const ExponentPair pair(Rational(2, 3), Rational(1, 3));
    const double before = op.ratio(f, pair, Direction::Forward);
    const double after = refine_ratio(f, pair, Direction::Forward, op, 60, 0.1, 5);
    CHECK(after >= before - 1e-12);
    CHECK(after == doctest::Approx(op.ratio(f, pair, Direction::Forward)));
}
