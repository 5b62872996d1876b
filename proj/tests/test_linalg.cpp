#include <doctest.h>

#include "cech_oracle.hpp"
#include "natcoh/errors.hpp"
#include "natcoh/linalg.hpp"

using namespace natcoh;

namespace {

ExactMatrix random_matrix(std::size_t rows, std::size_t cols, int height, Rng& rng)
{
    ExactMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            const long num = rng.uniform(-height, height);
            m(i, j) = Rational(num, rng.uniform(1, 3));
            m(i, j).canonicalize();
        }
    return m;
}

// Product of two random integer matrices has rank at most k.
ExactMatrix low_rank(std::size_t rows, std::size_t cols, std::size_t k, Rng& rng)
{
    return random_matrix(rows, k, 9, rng) * random_matrix(k, cols, 9, rng);
}

std::vector<std::vector<Rational>> rows_of(const ExactMatrix& m)
{
    std::vector<std::vector<Rational>> out(m.rows(), std::vector<Rational>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
    return out;
}

}  // namespace

TEST_SUITE("linalg")
{
    TEST_CASE("small ranks")
    {
        CHECK(rank(ExactMatrix::identity(3)) == 3);
        CHECK(rank(ExactMatrix(4, 7)) == 0);
        CHECK(rank(ExactMatrix(0, 5)) == 0);

        ModMatrix m(2, 2, 101);
        m.set(0, 0, 2);
        m.set(0, 1, 4);
        m.set(1, 0, 1);
        m.set(1, 1, 2);
        CHECK(m.rank() == 1);
        CHECK(reduce_mod(ExactMatrix::identity(5), 101).rank() == 5);

        ExactMatrix p(2, 2);
        p(0, 0) = 101;
        p(1, 1) = 1;
        CHECK(rank_modp(p, 101) == 1);
        CHECK(rank(p) == 2);
        CHECK(rank_bareiss(p) == 2);
        CHECK(certified_rank(p, 2, 101) == 2);
    }

    TEST_CASE("ranks agree with plain elimination")
    {
        Rng rng(17);
        for (int k = 0; k < 60; ++k) {
            const std::size_t rows = rng.uniform(1, 9);
            const std::size_t cols = rng.uniform(1, 9);
            const std::size_t target = rng.uniform(0, std::min(rows, cols));
            const ExactMatrix m = (k % 2) ? random_matrix(rows, cols, 4, rng) : low_rank(rows, cols, target, rng);
            const std::size_t want = oracle::naive_rank(rows_of(m));
            CHECK(rank(m) == want);
            CHECK(rank_bareiss(m) == want);
            CHECK(rank_modp(m, kDefaultPrime) <= want);
            CHECK(certified_rank(m, std::min(rows, cols)) == want);
            CHECK(rank(m.transpose()) == want);
        }
    }

    TEST_CASE("certified rank falls back when the screen misses the bound")
    {
        ExactMatrix m(3, 3);
        m(0, 0) = 7;
        m(1, 1) = 1;
        m(2, 2) = 1;
        // Mod 7 the screen sees rank 2 and must not stop there.
        CHECK(certified_rank(m, 3, 7) == 3);
    }

    TEST_CASE("nullspace")
    {
        CHECK(nullspace(ExactMatrix::identity(4)).empty());

        ExactMatrix row(1, 2);
        row(0, 0) = 1;
        row(0, 1) = 1;
        const auto ns = nullspace(row);
        REQUIRE(ns.size() == 1);
        CHECK(ns[0][0] == -ns[0][1]);
        CHECK(ns[0][1] == 1);

        Rng rng(23);
        for (int k = 0; k < 30; ++k) {
            const std::size_t rows = rng.uniform(1, 7);
            const std::size_t cols = rng.uniform(1, 9);
            const ExactMatrix m = low_rank(rows, cols, rng.uniform(0, std::min(rows, cols)), rng);
            const auto basis = nullspace(m);
            CHECK(basis.size() == cols - rank(m));
            for (const auto& v : basis)
                for (const auto& x : m.apply(v)) CHECK(x == 0);
            ExactMatrix stacked(basis.size(), cols);
            for (std::size_t i = 0; i < basis.size(); ++i)
                for (std::size_t j = 0; j < cols; ++j) stacked(i, j) = basis[i][j];
            CHECK(rank(stacked) == basis.size());
        }
    }

    TEST_CASE("reduction mod p")
    {
        CHECK(reduce_mod(Rational(-1), 101) == 100);
        CHECK(reduce_mod(Rational(1, 2), 101) == 51);
        CHECK_THROWS_AS(reduce_mod(Rational(1, 202), 101), DenominatorDivisibleByP);
    }

    TEST_CASE("primitive integer vectors")
    {
        const auto v = primitive_integer({Rational(2, 3), Rational(-4, 9), Rational(0)});
        CHECK(v[0] == 3);
        CHECK(v[1] == -2);
        CHECK(v[2] == 0);
    }
}
