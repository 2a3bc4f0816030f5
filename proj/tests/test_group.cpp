#include <doctest.h>

#include <sstream>

#include <irrep/errors.hpp>
#include <irrep/group.hpp>

#include "groups_util.hpp"

using namespace irrep;

TEST_CASE("parse_cayley_table accepts the trivial group") {
  const auto g = parse_cayley_table("1\n1\n");
  CHECK(g.order() == 1);
  CHECK(g.inverse(0) == 0);
}

TEST_CASE("parse_cayley_table handles comments and Z3") {
  const auto g = parse_cayley_table("# cyclic group of order 3\n3\n1 2 3\n2 3 1\n3 1 2\n");
  CHECK(g.order() == 3);
  CHECK(g.inverses() == std::vector<int>{0, 2, 1});
}

TEST_CASE("parse_cayley_table error paths") {
  CHECK_THROWS_AS((void)parse_cayley_table(""), parse_error);
  CHECK_THROWS_AS((void)parse_cayley_table("x\n"), parse_error);
  CHECK_THROWS_AS((void)parse_cayley_table("2\n1 2\n"), parse_error);
  CHECK_THROWS_AS((void)parse_cayley_table("2\n1 2 1\n2 1\n"), parse_error);
  CHECK_THROWS_AS((void)parse_cayley_table("2\n1 2\n2 3\n"), not_a_group);
  // not a Latin square
  CHECK_THROWS_AS((void)parse_cayley_table("2\n1 1\n2 2\n"), not_a_group);
  // element 1 is not the identity
  CHECK_THROWS_AS((void)parse_cayley_table("2\n2 1\n1 2\n"), not_a_group);
}

TEST_CASE("associativity violations are caught") {
  // Latin square with identity that is not associative
  const std::string text =
      "5\n"
      "1 2 3 4 5\n"
      "2 1 4 5 3\n"
      "3 5 1 2 4\n"
      "4 3 5 1 2\n"
      "5 4 2 3 1\n";
  CHECK_THROWS_AS((void)parse_cayley_table(text), not_a_group);
}

TEST_CASE("S3 table from the generator presentation") {
  const auto g = testutil::s3_table();
  CHECK(g.order() == 6);
  // a1^2 = a2^2 = (a1 a2)^3 = e with a1 = element 2, a2 = element 3
  CHECK(g.product(1, 1) == 0);
  CHECK(g.product(2, 2) == 0);
  const int a1a2 = g.product(1, 2);
  CHECK(g.product(a1a2, g.product(a1a2, a1a2)) == 0);
}

TEST_CASE("t_matrix basics") {
  SUBCASE("trivial group") {
    const auto t = parse_cayley_table("1\n1\n").t_matrix();
    CHECK(t == std::vector<std::vector<int>>{{0}});
  }

  SUBCASE("Z3 entries and diagonal") {
    const auto g = testutil::cyclic_table(3);
    const auto t = g.t_matrix();
    for (int i = 0; i < 3; ++i) CHECK(t[i][i] == 0);
    CHECK(t[1][2] == 2);  // g1 g2^{-1} = g1 g1 = g2
  }

  SUBCASE("first row lists the inverses and the product round-trips") {
    for (const auto& g : {testutil::s3_table(), testutil::q8_table(), testutil::d4_table()}) {
      const auto t = g.t_matrix();
      for (int j = 0; j < g.order(); ++j) CHECK(t[0][j] == g.inverse(j));
      for (int i = 0; i < g.order(); ++i)
        for (int j = 0; j < g.order(); ++j) CHECK(g.product(t[i][j], j) == i);
    }
  }
}

TEST_CASE("regular representation") {
  SUBCASE("trivial group") {
    const auto rep = regular_rep(parse_cayley_table("1\n1\n"));
    CHECK(rep.dim == 1);
    CHECK(rep.matrices[0] == cmatrix::Identity(1, 1));
  }

  SUBCASE("Z2 nontrivial element is the antidiagonal") {
    const auto rep = regular_rep(testutil::cyclic_table(2));
    cmatrix expected = cmatrix::Zero(2, 2);
    expected(0, 1) = 1.0;
    expected(1, 0) = 1.0;
    CHECK(rep.matrices[1] == expected);
  }

  SUBCASE("S3 regular rep is a 6-dim permutation homomorphism") {
    const auto g = testutil::s3_table();
    const auto rep = regular_rep(g);
    CHECK(rep.dim == 6);
    for (int k = 0; k < 6; ++k) {
      const double trace = rep.matrices[k].trace().real();
      CHECK(trace == (k == 0 ? 6.0 : 0.0));
      for (int i = 0; i < 6; ++i) {
        double row_sum = 0.0;
        for (int j = 0; j < 6; ++j) row_sum += std::abs(rep.matrices[k](i, j));
        CHECK(row_sum == 1.0);
      }
    }
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j)
        CHECK(rep.matrices[i] * rep.matrices[j] == rep.matrices[g.product(i, j)]);
  }

  SUBCASE("adjoint equals the matrix of the inverse element") {
    const auto g = testutil::q8_table();
    const auto rep = regular_rep(g);
    for (int k = 0; k < g.order(); ++k)
      CHECK(rep.matrices[k].adjoint() == rep.matrices[g.inverse(k)]);
  }
}

TEST_CASE("rep_from_matrices validation") {
  const auto z2 = testutil::cyclic_table(2);

  SUBCASE("identity matrices form the doubled trivial rep") {
    const auto rep =
        rep_from_matrices(z2, {cmatrix::Identity(2, 2), cmatrix::Identity(2, 2)});
    CHECK(rep.dim == 2);
  }

  SUBCASE("diag(1,-1) is a valid reducible rep") {
    cmatrix d = cmatrix::Identity(2, 2);
    d(1, 1) = -1.0;
    CHECK_NOTHROW((void)rep_from_matrices(z2, {cmatrix::Identity(2, 2), d}));
  }

  SUBCASE("diag(1,2) is rejected as non-unitary") {
    cmatrix d = cmatrix::Identity(2, 2);
    d(1, 1) = 2.0;
    try {
      (void)rep_from_matrices(z2, {cmatrix::Identity(2, 2), d});
      FAIL("expected rep_error");
    } catch (const rep_error& e) {
      CHECK(e.defect == rep_defect::not_unitary);
      CHECK(e.element == 1);
    }
  }

  SUBCASE("wrong identity and broken homomorphism are reported") {
    cmatrix swap = cmatrix::Zero(2, 2);
    swap(0, 1) = 1.0;
    swap(1, 0) = 1.0;
    try {
      (void)rep_from_matrices(z2, {swap, swap});
      FAIL("expected rep_error");
    } catch (const rep_error& e) {
      CHECK(e.defect == rep_defect::identity_mismatch);
    }

    cmatrix i2 = cmatrix::Identity(2, 2);
    cmatrix phase = i2 * std::polar(1.0, 0.7);
    try {
      (void)rep_from_matrices(z2, {i2, phase});  // phase^2 != identity
      FAIL("expected rep_error");
    } catch (const rep_error& e) {
      CHECK(e.defect == rep_defect::not_homomorphism);
    }
  }
}
