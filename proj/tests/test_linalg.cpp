#include <doctest.h>

#include <random>

#include "silt/matrix.hpp"

using namespace silt;

namespace {

Matrix from_rows(Field f, const std::vector<std::vector<long>>& rows) {
    Matrix m(f, static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j)
            m.at(static_cast<int>(i), static_cast<int>(j)) = f.from_long(rows[i][j]);
    return m;
}

Matrix random_matrix(Field f, std::mt19937_64& rng, int r, int c, int bound) {
    Matrix m(f, r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
            m.at(i, j) = f.from_long(static_cast<long>(rng() % (2 * bound + 1)) - bound);
    return m;
}

} // namespace

TEST_CASE("solve_and_kernel identity case") {
    Field f = Field::rationals();
    Matrix id3 = Matrix::identity(f, 3);
    std::vector<Rat> e1 = {Rat(1), Rat(0), Rat(0)};
    auto r = solve_and_kernel(id3, e1);
    CHECK(r.rank == 3);
    CHECK(r.kernel.empty());
    REQUIRE(r.particular.has_value());
    CHECK(*r.particular == e1);
}

TEST_CASE("solve_and_kernel zero matrix") {
    Field f = Field::rationals();
    Matrix z(f, 2, 2);
    auto r = solve_and_kernel(z, std::nullopt);
    CHECK(r.rank == 0);
    REQUIRE(r.kernel.size() == 2);
    CHECK(r.kernel[0] == std::vector<Rat>{Rat(1), Rat(0)});
    CHECK(r.kernel[1] == std::vector<Rat>{Rat(0), Rat(1)});
}

TEST_CASE("rank-one kernel from hand reduction") {
    Field f = Field::rationals();
    Matrix m = from_rows(f, {{1, 2}, {2, 4}});
    auto r = solve_and_kernel(m, std::nullopt);
    CHECK(r.rank == 1);
    REQUIRE(r.kernel.size() == 1);
    CHECK(r.kernel[0] == std::vector<Rat>{Rat(-2), Rat(1)});
}

TEST_CASE("kernel vectors annihilate and rank equals transpose rank") {
    for (Field f : {Field::rationals(), Field::prime(5)}) {
        std::mt19937_64 rng(12345);
        for (int t = 0; t < 25; ++t) {
            int r = 1 + static_cast<int>(rng() % 5), c = 1 + static_cast<int>(rng() % 5);
            Matrix m = random_matrix(f, rng, r, c, 4);
            for (const auto& v : kernel_basis(m)) CHECK(vec_is_zero(m.apply(v)));
            CHECK(rank(m) == rank(m.transposed()));
        }
    }
}

TEST_CASE("F_p agrees with Q on unimodular products") {
    Field q = Field::rationals(), fp = Field::prime(5);
    std::mt19937_64 rng(777);
    for (int t = 0; t < 10; ++t) {
        int n = 2 + static_cast<int>(rng() % 3);
        // L unit lower x U unit upper: invertible over every field
        Matrix L = Matrix::identity(q, n), U = Matrix::identity(q, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j) L.at(i, j) = q.from_long(static_cast<long>(rng() % 5) - 2);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) U.at(i, j) = q.from_long(static_cast<long>(rng() % 5) - 2);
        Matrix m = L * U;
        Matrix mp(fp, n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) mp.at(i, j) = fp.canon(m.at(i, j));
        CHECK(rank(m) == n);
        CHECK(rank(mp) == n);
        CHECK(kernel_basis(mp).empty());
    }
}

TEST_CASE("express_in_span and SpanBuilder") {
    Field f = Field::rationals();
    std::vector<std::vector<Rat>> span = {{Rat(1), Rat(0), Rat(1)}, {Rat(0), Rat(1), Rat(1)}};
    auto c = express_in_span(f, span, {Rat(2), Rat(3), Rat(5)});
    REQUIRE(c.has_value());
    CHECK((*c)[0] == 2);
    CHECK((*c)[1] == 3);
    CHECK(!express_in_span(f, span, {Rat(0), Rat(0), Rat(1)}).has_value());

    SpanBuilder sb(f, 3);
    CHECK(sb.insert({Rat(2), Rat(0), Rat(2)}));
    CHECK(!sb.insert({Rat(1), Rat(0), Rat(1)}));
    CHECK(sb.insert({Rat(1), Rat(1), Rat(2)}));
    CHECK(sb.dim() == 2);
    CHECK(sb.contains({Rat(3), Rat(1), Rat(4)}));
    CHECK(!sb.contains({Rat(0), Rat(0), Rat(1)}));
    auto basis = sb.basis();
    CHECK(basis[0] == std::vector<Rat>{Rat(1), Rat(0), Rat(1)});
    CHECK(basis[1] == std::vector<Rat>{Rat(0), Rat(1), Rat(1)});
}

TEST_CASE("prime field arithmetic") {
    Field f = Field::prime(5);
    CHECK(f.canon(Rat(7)) == 2);
    CHECK(f.canon(Rat(-1)) == 4);
    CHECK(f.inv(Rat(2)) == 3);
    CHECK(f.canon(Rat(1, 2)) == 3); // 1/2 = 3 mod 5
    CHECK_THROWS_AS(Field::prime(6), InputError);
}
