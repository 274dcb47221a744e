#include "doctest.h"

#include "pimat/glrep.hpp"

#include <map>

using namespace pimat;

namespace {

/// Decomposition by weight counting: the character of the tensor product is
/// peeled from its dominant weights downwards.
std::map<std::pair<int, int>, int> decompose_by_weights(const CommutatorShape& shape) {
  std::map<std::pair<int, int>, int> weights{{{0, 0}, 1}};
  for (int m : shape) {
    std::map<std::pair<int, int>, int> next;
    for (const auto& [w, k] : weights)
      for (int i = 0; i <= m - 2; ++i) next[{w.first + m - 1 - i, w.second + 1 + i}] += k;
    weights = std::move(next);
  }
  std::map<std::pair<int, int>, int> out;
  while (!weights.empty()) {
    auto top = weights.begin();
    for (auto it = weights.begin(); it != weights.end(); ++it)
      if (it->first.first > top->first.first) top = it;
    const auto [a, b] = top->first;
    const int k = top->second;
    out[{a, b}] += k;
    for (int i = 0; i <= a - b; ++i) {
      auto it = weights.find({a - i, b + i});
      REQUIRE(it != weights.end());
      it->second -= k;
      if (it->second == 0) weights.erase(it);
    }
  }
  return out;
}

}  // namespace

TEST_SUITE("glrep") {
  TEST_CASE("products of commutators decompose as tabulated") {
    const std::vector<std::pair<std::string, std::string>> table = {
        {"4,2,2,2", "W(6,4)"},
        {"3,3,2,2", "W(6,4) ⊕ W(5,5)"},
        {"2,2,2,2,2", "W(5,5)"},
        {"5,2,2,2", "W(7,4)"},
        {"4,3,2,2", "W(7,4) ⊕ W(6,5)"},
        {"3,3,3,2", "W(7,4) ⊕ 2W(6,5)"},
        {"3,2,2,2,2", "W(6,5)"},
        {"6,2,2,2", "W(8,4)"},
        {"5,3,2,2", "W(8,4) ⊕ W(7,5)"},
        {"4,4,2,2", "W(8,4) ⊕ W(7,5) ⊕ W(6,6)"},
        {"4,3,3,2", "W(8,4) ⊕ 2W(7,5) ⊕ W(6,6)"},
        {"3,3,3,3", "W(8,4) ⊕ 3W(7,5) ⊕ 2W(6,6)"},
        {"4,2,2,2,2", "W(7,5)"},
        {"3,3,2,2,2", "W(7,5) ⊕ W(6,6)"},
        {"2,2,2,2,2,2", "W(6,6)"},
    };
    for (const auto& [shape, text] : table) {
      CAPTURE(shape);
      CHECK(to_string(decompose_shape(parse_shape(shape))) == text);
    }
    CHECK(to_string(decompose_shape({2})) == "W(1,1)");
    CHECK(to_string(decompose_shape({3, 2})) == "W(3,2)");
  }

  TEST_CASE("clebsch-gordan agrees with weight counting for every shape up to degree 12") {
    for (int total = 2; total <= 12; ++total) {
      for (const auto& shape : enumerate_shapes(total, 1)) {
        CAPTURE(to_string(shape));
        const Decomposition d = decompose_shape(shape);
        const auto oracle = decompose_by_weights(shape);
        int dim = 1;
        for (int m : shape) dim *= m - 1;
        CHECK(d.dimension() == dim);
        CHECK(d.parts().size() == oracle.size());
        for (const auto& [p, k] : d.parts()) CHECK(oracle.at({p.first, p.second}) == k);
      }
    }
  }

  TEST_CASE("clebsch-gordan is symmetric") {
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b <= a; ++b)
        for (int c = 0; c < 5; ++c)
          for (int e = 0; e <= c; ++e)
            CHECK(clebsch_gordan({a, b}, {c, e}) == clebsch_gordan({c, e}, {a, b}));
  }

  TEST_CASE("parsing rejects malformed input") {
    CHECK_THROWS_AS(parse_shape("3,1"), ParseError);
    CHECK_THROWS_AS(parse_shape("3,,2"), ParseError);
    CHECK_THROWS(parse_partition("2,5"));
    CHECK(parse_partition("(7,5)") == Partition2(7, 5));
  }

  TEST_CASE("shapes are enumerated with enough parts") {
    for (const auto& s : enumerate_shapes(10, 4)) CHECK(s.size() >= 4);
    CHECK(enumerate_shapes(4, 1).size() == 2);
    CHECK(partitions_of(12, 5) == std::vector<Partition2>{{7, 5}, {6, 6}});
  }

  TEST_CASE("basic commutators expand to the left-normed form") {
    CHECK(BasicCommutator{2, 1}.expand() == parse_ncpoly("[y,x,x]"));
    CHECK(BasicCommutator{1, 3}.expand() == parse_ncpoly("[y,x,y,y]"));
    CHECK(to_string(BasicCommutator{2, 2}) == "[y,x,x,y]");
  }

  TEST_CASE("raising is a derivation sending y to x") {
    CHECK(raise(parse_ncpoly("y")) == parse_ncpoly("x"));
    CHECK(raise(parse_ncpoly("yy")) == parse_ncpoly("xy + yx"));
    CHECK(raise(parse_ncpoly("[y,x,y]")) == parse_ncpoly("[y,x,x]"));
    CHECK(raise(parse_ncpoly("[y,x]")).is_zero());
  }

  TEST_CASE("highest weight vectors of weight (5,5)") {
    const HwvSpace s = hwv_space({5, 5}, 4);
    CHECK(s.dimension() == 7);
    CHECK(expected_hwv_count({5, 5}, 4) == 7);
    for (const auto& v : s.vectors) CHECK(verify_hwv(v));
    const NCPoly w1 = parse_ncpoly("([y,x,x][y,x,y]-[y,x,y][y,x,x])[y,x]^2");
    const NCPoly w2 = parse_ncpoly("[y,x]^5");
    CHECK(verify_hwv(w1));
    CHECK(verify_hwv(w2));
    for (const NCPoly& w : {w1, w2}) {
      auto all = s.vectors;
      all.push_back(w);
      CHECK(rank(word_matrix(all)) == 7);
    }
    CHECK_FALSE(verify_hwv(parse_ncpoly("[y,x,y][y,x]^4")));
  }

  TEST_CASE("a single commutator square is a highest weight vector") {
    const HwvSpace s = hwv_space({2, 2}, 1);
    REQUIRE(s.dimension() == 1);
    CHECK((s.vectors[0] == parse_ncpoly("[y,x]^2") || s.vectors[0] == -parse_ncpoly("[y,x]^2")));
  }

  TEST_CASE("hwv counts match the multiplicity sums") {
    for (const Partition2 l : {Partition2(6, 5), Partition2(4, 4), Partition2(5, 3)})
      for (int parts = 1; parts <= 4; ++parts)
        CHECK(hwv_space(l, parts).dimension() == static_cast<std::size_t>(expected_hwv_count(l, parts)));
  }

  TEST_CASE("explicitly built degree 11 candidates span the computed space") {
    // Com4 Com3 Com2^2 in all 12 orders, two antisymmetrized Com3^3 Com2
    // families in 4 positions, and Com3 Com2^4 in 5 positions.
    const std::string A = "[y,x,x,x]", B = "[y,x,x,y]", P = "[y,x,x]", Q = "[y,x,y]", T = "[y,x]";
    auto product = [](const std::vector<std::string>& f) {
      std::string s;
      for (const auto& t : f) s += t;
      return parse_ncpoly(s);
    };
    std::vector<NCPoly> built;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        if (i == j) continue;
        std::vector<std::string> a(4, T), b(4, T);
        a[i] = A, a[j] = Q, b[i] = B, b[j] = P;
        built.push_back(product(a) - product(b));
      }
    for (int t = 0; t < 4; ++t) {
      std::vector<int> slot;
      for (int k = 0; k < 4; ++k)
        if (k != t) slot.push_back(k);
      std::vector<std::string> a(4, T), b(4, T), c(4, T), d(4, T);
      a[slot[0]] = P, a[slot[1]] = Q, a[slot[2]] = P;
      b[slot[0]] = Q, b[slot[1]] = P, b[slot[2]] = P;
      c[slot[0]] = P, c[slot[1]] = P, c[slot[2]] = Q;
      d[slot[0]] = P, d[slot[1]] = Q, d[slot[2]] = P;
      built.push_back(product(a) - product(b));
      built.push_back(product(c) - product(d));
    }
    for (int t = 0; t < 5; ++t) {
      std::vector<std::string> a(5, T);
      a[t] = P;
      built.push_back(product(a));
    }
    REQUIRE(built.size() == 25);
    for (const auto& w : built) CHECK(verify_hwv(w));
    const HwvSpace s = hwv_space({6, 5}, 4);
    CHECK(rank(word_matrix(built)) == 25);
    auto joint = s.vectors;
    joint.insert(joint.end(), built.begin(), built.end());
    CHECK(rank(word_matrix(joint)) == 25);
  }
}
