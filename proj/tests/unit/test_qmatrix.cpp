#include <doctest.h>

#include <complex>

#include "support/helpers.hpp"
#include "support/oracles.hpp"

using namespace qreflex;
using namespace qreflex::test;

TEST_SUITE("qmatrix") {

TEST_CASE("matmul examples") {
  Rng rng(10);
  const QMatrixd a = rng.matrix(3, 4);
  CHECK(matmul(identity<double>(3), a) == a);
  CHECK(matmul(a, identity<double>(4)) == a);
  CHECK(matmul(mat({{I}}), mat({{J}})) == mat({{K}}));
  CHECK(matmul(mat({{J}}), mat({{I}})) == mat({{-K}}));
  CHECK_THROWS_AS(matmul(a, a), DimensionError);
}

TEST_CASE("matmul keeps factor order at blocked sizes") {
  // Large enough that a generic GEMM kernel would kick in.
  Rng rng(20);
  const QMatrixd a = rng.matrix(40, 30), b = rng.matrix(30, 50);
  const QMatrixd ref = naive_product(a, b);
  CHECK(fro_norm(QMatrixd(matmul(a, b) - ref)) <= 1e-12 * fro_norm(ref));
  CHECK(fro_norm(QMatrixd(oracle::embedded_product(a, b) - ref)) <= 1e-12 * fro_norm(ref));
}

TEST_CASE("three-factor matmul is associative") {
  Rng rng(21);
  const QMatrixd a = rng.matrix(2, 7), b = rng.matrix(7, 6), c = rng.matrix(6, 1);
  const QMatrixd ref = naive_product(naive_product(a, b), c);
  CHECK(fro_norm(QMatrixd(matmul(a, b, c) - ref)) <= 1e-12 * fro_norm(ref));
}

TEST_CASE("empty products") {
  const QMatrixd a = zeros<double>(3, 0), b = zeros<double>(0, 2);
  const QMatrixd c = matmul(a, b);
  CHECK(c.rows() == 3);
  CHECK(c.cols() == 2);
  CHECK(fro_norm(c) == 0);
}

TEST_CASE("adjoint examples") {
  CHECK(adjoint(identity<double>(3)) == identity<double>(3));
  CHECK(adjoint(mat({{I, 0.0}, {1.0, J}})) == mat({{-I, 1.0}, {0.0, -J}}));
  Rng rng(12);
  const QMatrixd a = rng.matrix(3, 5);
  CHECK(adjoint(adjoint(a)) == a);
}

TEST_CASE("inner product and norm examples") {
  CHECK(inner(identity<double>(4), identity<double>(4)) == Q(4));
  CHECK(fro_norm(mat({{1.0, 1.0}, {1.0, 1.0}})) == 2);
  Rng rng(13);
  const QMatrixd a = rng.matrix(3, 3);
  const Q aa = inner(a, a);
  CHECK(std::abs(aa.w - fro_norm2(a)) <= 1e-12 * aa.w);
  CHECK(aa.vec_abs() <= 1e-12 * aa.w);
  CHECK_THROWS_AS(inner(a, QMatrixd(rng.matrix(2, 3))), DimensionError);
}

TEST_CASE("chi embedding examples") {
  using C = std::complex<double>;
  const CMatrixd one = chi_embed(mat({{1.0}}));
  CHECK(one == CMatrixd::Identity(2, 2));
  CMatrixd ej(2, 2), ei(2, 2);
  ej << C(0), C(1), C(-1), C(0);
  ei << C(0, 1), C(0), C(0), C(0, -1);
  CHECK(chi_embed(mat({{J}})) == ej);
  CHECK(chi_embed(mat({{I}})) == ei);
}

TEST_CASE("chi_extract inverts chi_embed and rejects asymmetric input") {
  Rng rng(14);
  const QMatrixd a = rng.matrix(3, 4);
  CHECK(chi_extract(chi_embed(a)) == a);
  CMatrixd bad = chi_embed(a);
  bad(3, 0) += 0.5;
  CHECK_THROWS_AS(chi_extract(bad), StructureError);
  CHECK_THROWS_AS(chi_extract(CMatrixd(CMatrixd::Zero(3, 2))), StructureError);
}

TEST_CASE("backward identity examples") {
  CHECK(backward_identity<double>(1) == mat({{1.0}}));
  CHECK(backward_identity<double>(2) == mat({{0.0, 1.0}, {1.0, 0.0}}));
  for (Eigen::Index n = 1; n <= 6; ++n) {
    const QMatrixd v = backward_identity<double>(n);
    CHECK(matmul(v, v) == identity<double>(n));
    CHECK(adjoint(v) == v);
  }
  CHECK_THROWS_AS(backward_identity<double>(0), DimensionError);
}

TEST_CASE("property: chi_embed is a *-homomorphism") {
  Rng rng(15);
  for (int t = 0; t < 50; ++t) {
    const auto m = 1 + static_cast<Eigen::Index>(rng.index(6));
    const auto p = 1 + static_cast<Eigen::Index>(rng.index(6));
    const auto n = 1 + static_cast<Eigen::Index>(rng.index(6));
    const QMatrixd a = rng.matrix(m, p), b = rng.matrix(p, n);
    const CMatrixd lhs = chi_embed(matmul(a, b));
    const CMatrixd rhs = chi_embed(a) * chi_embed(b);
    CHECK((lhs - rhs).norm() <= 1e-12 * fro_norm(a) * fro_norm(b) * 2);
    CHECK((chi_embed(adjoint(a)) - chi_embed(a).adjoint()).norm() == 0);
  }
}

TEST_CASE("property: embedding doubles the squared norm") {
  Rng rng(16);
  for (int t = 0; t < 50; ++t) {
    const QMatrixd a = rng.matrix(1 + static_cast<Eigen::Index>(rng.index(6)),
                                  1 + static_cast<Eigen::Index>(rng.index(6)));
    CHECK(std::abs(fro_norm2(a) - chi_embed(a).squaredNorm() / 2) <= 1e-12 * fro_norm2(a));
  }
}

TEST_CASE("property: adjoint reverses products") {
  Rng rng(17);
  for (int t = 0; t < 50; ++t) {
    const QMatrixd a = rng.matrix(3, 4), b = rng.matrix(4, 2);
    const QMatrixd lhs = adjoint(matmul(a, b)), rhs = matmul(adjoint(b), adjoint(a));
    CHECK(fro_norm(QMatrixd(lhs - rhs)) <= 1e-14 * fro_norm(a) * fro_norm(b));
  }
}

TEST_CASE("left and right scalar multiplication differ") {
  const QMatrixd a = mat({{J}});
  CHECK(left_scale(I, a) == mat({{K}}));
  CHECK(right_scale(a, I) == mat({{-K}}));
  CHECK(left_scale(I, a) != right_scale(a, I));
}

TEST_CASE("hcat handles empty blocks") {
  Rng rng(18);
  const QMatrixd a = rng.matrix(3, 2);
  CHECK(hcat(a, zeros<double>(3, 0)) == a);
  CHECK(hcat(zeros<double>(3, 0), a) == a);
  const QMatrixd b = hcat(a, a);
  CHECK(b.cols() == 4);
  CHECK(b.rightCols(2) == a);
}

}  // TEST_SUITE
