#include <catch_amalgamated.hpp>

#include <algorithm>
#include <array>
#include <random>
#include <vector>

#include "kinser/kinser.hpp"
#include "oracles.hpp"

using namespace kinser;

namespace {

SubsetMask V(const Matroid& M, int i) { return M.layout()->at("V" + std::to_string(i)); }

Family random_family(std::mt19937_64& rng, int n, SubsetMask ground) {
  std::vector<SubsetMask> sets(static_cast<std::size_t>(n));
  for (auto& x : sets) x = static_cast<SubsetMask>(rng()) & ground;
  return Family(sets);
}

SearchConfig config(SearchSpace space = SearchSpace::flats) {
  SearchConfig cfg;
  cfg.space = space;
  return cfg;
}

std::vector<Matroid> z4_relaxations() {
  const Matroid Z4 = binary_spike(4);
  std::vector<Matroid> out;
  for (SubsetMask h : enumerate(Z4, SetKind::circuit_hyperplanes)) out.push_back(relax(Z4, h));
  return out;
}

// even transversals of Z_r meeting both A and B
std::vector<SubsetMask> mixed_transversals(int r) {
  std::vector<SubsetMask> out;
  for (SubsetMask t : spike_even_transversals(r)) {
    if ((t & full_mask(r)) != 0 && (t >> r) != 0) out.push_back(t);
  }
  return out;
}

std::vector<Matroid> matroids_upto6() {
  std::mt19937_64 rng(21);
  std::vector<Matroid> out{uniform(1, 3), uniform(2, 4), uniform(3, 6), uniform(2, 5), uniform(0, 2)};
  auto [F7, F7m] = fano_pair();
  out.push_back(delete_element(F7, 0).matroid);
  out.push_back(contract_element(F7m, 6).matroid);
  for (const Matroid& M : oracle::random_matroids8(rng, 6)) {
    out.push_back(delete_element(delete_element(M, 7).matroid, 0).matroid);
  }
  const Matroid V8 = kinser_relaxed(4);
  out.push_back(contract_element(contract_element(V8, 0).matroid, 0).matroid);
  out.push_back(delete_element(contract_element(V8, 7).matroid, 0).matroid);
  return out;
}

}  // namespace

TEST_CASE("term counts") {
  for (int n = 4; n <= 8; ++n) {
    const Family fam(std::vector<SubsetMask>(static_cast<std::size_t>(n), 0));
    const auto terms = kinser_terms(fam);
    const auto lhs = std::count_if(terms.begin(), terms.end(), [](const Term& t) { return t.side == Side::lhs; });
    const auto rhs = std::count_if(terms.begin(), terms.end(), [](const Term& t) { return t.side == Side::rhs; });
    CHECK(lhs == 2 * n - 3);
    CHECK(rhs == 2 * n - 3);
  }
  CHECK_THROWS_AS(kinser_terms(Family({0, 0, 0})), PreconditionError);
}

TEST_CASE("all-empty family") {
  auto [F7, F7m] = fano_pair();
  for (int n = 4; n <= 7; ++n) {
    const InequalityValue v = evaluate(F7, Family(std::vector<SubsetMask>(static_cast<std::size_t>(n), 0)));
    CHECK(v.lhs == 0);
    CHECK(v.rhs == 0);
    CHECK(v.satisfied());
  }
}

TEST_CASE("inequality 4 is the Ingleton inequality") {
  std::mt19937_64 rng(0x1234);
  const auto pool = oracle::random_matroids8(rng, 20);
  for (int t = 0; t < 10000; ++t) {
    const Matroid& M = pool[static_cast<std::size_t>(t) % pool.size()];
    const Family f = random_family(rng, 4, M.ground());
    const auto ref = oracle::ingleton([&](SubsetMask x) { return M.rank(x); }, f.x(1), f.x(2), f.x(3), f.x(4));
    const InequalityValue v = evaluate(M, f);
    REQUIRE(v.lhs == ref.lhs);
    REQUIRE(v.rhs == ref.rhs);
  }
}

TEST_CASE("canonical Kinser families") {
  const std::array<std::pair<int, int>, 3> expected{{{16, 15}, {29, 28}, {46, 45}}};
  for (int r = 4; r <= 5; ++r) {
    const Matroid M = kinser_relaxed(r);
    const Family f = canonical_kinser_family(M);
    CHECK(f.n == r);
    for (int i = 1; i <= r; ++i) CHECK(f.x(i) == V(M, i));
    const InequalityValue v = evaluate(M, f);
    CHECK(v.lhs == 2 * r * r - 5 * r + 4);
    CHECK(v.rhs == 2 * r * r - 5 * r + 3);
    CHECK(v.lhs == expected[r - 4].first);
    CHECK(v.rhs == expected[r - 4].second);
  }
  // tightening V1 u V2 restores the inequality on the same family
  const Matroid K5 = kinser::kinser(5);
  CHECK(evaluate(K5, canonical_kinser_family(K5)).satisfied());
  CHECK_THROWS_AS(canonical_kinser_family(uniform(2, 4)), PreconditionError);
}

TEST_CASE("canonical spike families") {
  const Matroid Z4 = binary_spike(4);
  const auto& L = *Z4.layout();
  const SubsetMask Z = L.at("a1") | L.at("a2") | L.at("b3") | L.at("b4");
  const Family f = canonical_spike_family(Z4, Z);
  CHECK(f.x(1) == (L.at("a1") | L.at("a2")));
  CHECK(f.x(2) == (L.at("b3") | L.at("b4")));
  CHECK(f.x(3) == (L.at("b1") | L.at("b2")));
  CHECK(f.x(4) == (L.at("a3") | L.at("a4")));
  CHECK((f.x(1) | f.x(2) | f.x(3) | f.x(4)) == Z4.ground());

  const auto mixed = mixed_transversals(4);
  CHECK(mixed.size() == 6);
  for (SubsetMask t : mixed) {
    const InequalityValue v = evaluate(relax(Z4, t), canonical_spike_family(Z4, t));
    CHECK(v.lhs == 16);
    CHECK(v.rhs == 15);
    CHECK(evaluate(Z4, canonical_spike_family(Z4, t)).satisfied());
  }
  CHECK_THROWS_AS(canonical_spike_family(Z4, L.at("A")), PreconditionError);
  CHECK_THROWS_AS(canonical_spike_family(Z4, L.at("a1") | L.at("b2") | L.at("a3") | L.at("a4")), PreconditionError);
}

TEST_CASE("closure reduction keeps every term rank") {
  auto [F7, F7m] = fano_pair();
  std::mt19937_64 rng(99);
  for (int t = 0; t < 1000; ++t) {
    const int n = 4 + t % 3;
    const Family f = random_family(rng, n, F7.ground());
    const InequalityValue a = evaluate(F7, f);
    for (Reduction mode : {Reduction::closure, Reduction::basis}) {
      const Family g = reduce_family(F7, f, mode);
      const InequalityValue b = evaluate(F7, g);
      REQUIRE(a.lhs == b.lhs);
      REQUIRE(a.rhs == b.rhs);
      if (mode == Reduction::closure) {
        for (std::size_t i = 0; i < a.terms.size(); ++i) REQUIRE(a.terms[i].rank == b.terms[i].rank);
        for (SubsetMask x : g.sets) REQUIRE(is_flat(F7, x));
      } else {
        for (SubsetMask x : g.sets) REQUIRE(oracle::independent(F7, x));
      }
    }
  }
}

TEST_CASE("closure reduction on larger matroids") {
  std::mt19937_64 rng(17);
  for (const Matroid& M : {kinser_relaxed(5), binary_spike(6)}) {
    for (int t = 0; t < 200; ++t) {
      const Family f = random_family(rng, 5, M.ground());
      const Family g = reduce_family(M, f, Reduction::closure);
      const InequalityValue a = evaluate(M, f), b = evaluate(M, g);
      for (std::size_t i = 0; i < a.terms.size(); ++i) REQUIRE(a.terms[i].rank == b.terms[i].rank);
      for (int i = 1; i <= 5; ++i) REQUIRE(g.x(i) == oracle::closure(M, f.x(i)));
    }
  }
}

TEST_CASE("reduction examples") {
  const Matroid V8 = kinser_relaxed(4);
  const Family singles({bit(0), bit(1), bit(2), bit(3)});
  CHECK(reduce_family(V8, singles, Reduction::closure) == singles);
  auto [F7, F7m] = fano_pair();
  const auto flats = enumerate(F7, SetKind::flats);
  const Family ff({flats[1], flats[3], flats[5], flats[7]});
  CHECK(reduce_family(F7, ff, Reduction::closure) == ff);
  CHECK(least_basis(F7, F7.ground()) == 0b0000111);
}

TEST_CASE("extending a family keeps the margin") {
  auto [F7, F7m] = fano_pair();
  std::mt19937_64 rng(5);
  for (int t = 0; t < 500; ++t) {
    const Family f = random_family(rng, 4 + t % 3, F7.ground());
    REQUIRE(evaluate(F7, extend_family(f)).margin() == evaluate(F7, f).margin());
  }
  const Family empty(std::vector<SubsetMask>(4, 0));
  const Family e5 = extend_family(empty);
  CHECK(e5.n == 5);
  CHECK(evaluate(F7, e5).lhs == 0);
  CHECK(evaluate(F7, e5).rhs == 0);
  CHECK_THROWS_AS(extend_family(Family({0, 0, 0})), PreconditionError);
}

TEST_CASE("corank constant blocks on Kin(5)-") {
  const Matroid M = kinser_relaxed(5);
  const std::array<std::array<int, 3>, 6> perms{{{3, 4, 5}, {3, 5, 4}, {4, 3, 5}, {4, 5, 3}, {5, 3, 4}, {5, 4, 3}}};
  for (const auto& p : perms) {
    const SubsetMask Vi = V(M, p[0]), Vj = V(M, p[1]), Vk = V(M, p[2]);
    const SubsetMask V1 = V(M, 1), V2 = V(M, 2);
    INFO("i,j,k = " << p[0] << p[1] << p[2]);

    const Family first({Vj | Vk, Vi, V2, V1 | Vj, V1 | Vk});
    const auto first_report = corank_term_report(M, first);
    CHECK(constant_block(first_report, Side::lhs, 3).constant == 50);
    CHECK(constant_block(first_report, Side::rhs, 3).constant == 52);

    const Family second({Vj | Vk, Vi, V1 | Vj, V2, V1 | Vk});
    const auto second_report = corank_term_report(M, second);
    CHECK(constant_block(second_report, Side::lhs, 4).constant == 49);
    CHECK(constant_block(second_report, Side::rhs, 4).constant == 52);

    const Family third({V2, Vi | V1, V(M, 3) | V(M, 4) | V(M, 5), Vk, Vj | V1});
    const auto third_report = corank_term_report(M, third);
    const ConstantBlock third_lhs = constant_block(third_report, Side::lhs, 1);
    CHECK(third_lhs.constant == 61);
    CHECK(third_lhs.terms == 5);
    CHECK(constant_block(third_report, Side::rhs, 1).constant == 67);
  }
}

TEST_CASE("corank constants term by term") {
  const Matroid M = kinser_relaxed(5);
  const Family s({V(M, 4) | V(M, 5), V(M, 3), V(M, 2), V(M, 1) | V(M, 4), V(M, 1) | V(M, 5)});
  std::vector<int> lhs, rhs;
  for (const CorankTerm& c : corank_term_report(M, s)) {
    const auto& idx = c.term.indices;
    if (std::find(idx.begin(), idx.end(), 3) != idx.end()) continue;
    (c.term.side == Side::lhs ? lhs : rhs).push_back(c.size);
    (c.term.side == Side::lhs ? lhs : rhs).push_back(c.complement_rank);
  }
  std::sort(lhs.begin(), lhs.end());
  std::sort(rhs.begin(), rhs.end());
  CHECK(lhs == std::vector<int>{2, 5, 5, 5, 6, 6, 9, 12});
  CHECK(rhs == std::vector<int>{4, 4, 4, 4, 9, 9, 9, 9});
}

TEST_CASE("corank report matches the dual matroid") {
  const Matroid M = kinser_relaxed(5);
  const Matroid D = dual(M);
  std::mt19937_64 rng(8);
  for (int t = 0; t < 100; ++t) {
    const Family f = random_family(rng, 5, M.ground());
    const auto report = corank_term_report(M, f);
    const auto terms = evaluate(D, f).terms;
    for (std::size_t i = 0; i < report.size(); ++i) REQUIRE(report[i].corank == terms[i].rank);
  }
}

TEST_CASE("search examples") {
  const Matroid V8 = kinser_relaxed(4);
  const Verdict v = membership(V8, 4);
  REQUIRE_FALSE(v.in_class);
  CHECK(v.certificate->lhs - v.certificate->rhs == 1);
  CHECK(evaluate(V8, v.certificate->family).margin() == 1);

  auto [F7, F7m] = fano_pair();
  CHECK(membership(F7, 4).in_class);
  CHECK(membership(F7m, 4).in_class);
  CHECK(membership(binary_spike(4), 4).in_class);
  CHECK(membership(uniform(1, 3), 5).in_class);
  CHECK(membership(uniform(1, 3), 5, config(SearchSpace::all_subsets)).in_class);
  CHECK_FALSE(dual_membership(V8, 4).in_class);
  CHECK(dual_membership(uniform(2, 4), 4).in_class);
  CHECK(dual_membership(binary_spike(4), 4).in_class);
  CHECK_THROWS_AS(membership(uniform(2, 9), 4, config(SearchSpace::all_subsets)), SizeCapError);
  CHECK_THROWS_AS(membership(F7, 3), PreconditionError);
}

TEST_CASE("the lex-first certificate is the least violating tuple") {
  const Matroid V8 = kinser_relaxed(4);
  const auto flats = enumerate(V8, SetKind::flats);
  const auto cert = search_bad_family(V8, 4, {});
  REQUIRE(cert);
  // brute force over flat index tuples in lexicographic order
  std::optional<std::array<std::size_t, 4>> first;
  const std::size_t F = flats.size();
  for (std::size_t a = 0; a < F && !first; ++a)
    for (std::size_t b = 0; b < F && !first; ++b)
      for (std::size_t c = 0; c < F && !first; ++c)
        for (std::size_t d = 0; d < F && !first; ++d) {
          const auto ref = oracle::ingleton([&](SubsetMask x) { return V8.rank(x); }, flats[a], flats[b], flats[c],
                                            flats[d]);
          if (ref.lhs > ref.rhs) first = std::array<std::size_t, 4>{a, b, c, d};
        }
  REQUIRE(first);
  for (int i = 0; i < 4; ++i) CHECK(cert->family.x(i + 1) == flats[(*first)[i]]);
}

TEST_CASE("search spaces agree on small matroids") {
  for (const Matroid& M : matroids_upto6()) {
    INFO(M.label() << " m=" << M.size());
    const bool flats = membership(M, 4, config(SearchSpace::flats)).in_class;
    CHECK(membership(M, 4, config(SearchSpace::all_subsets)).in_class == flats);
    CHECK(membership(M, 4, config(SearchSpace::independent)).in_class == flats);
    if (M.size() <= 5) {
      CHECK(membership(M, 5, config(SearchSpace::all_subsets)).in_class ==
            membership(M, 5, config(SearchSpace::flats)).in_class);
    }
  }
}

TEST_CASE("search spaces agree on the Vamos matroid") {
  const Matroid V8 = kinser_relaxed(4);
  SearchConfig any = config(SearchSpace::all_subsets);
  any.determinism = Determinism::any;
  const auto a = search_bad_family(V8, 4, any);
  REQUIRE(a);
  CHECK(evaluate(V8, a->family).margin() > 0);
  SearchConfig indep = config(SearchSpace::independent);
  indep.determinism = Determinism::any;
  CHECK(search_bad_family(V8, 4, indep).has_value());
}

TEST_CASE("pruning does not change lex-first results") {
  std::vector<Matroid> cases = z4_relaxations();
  cases.push_back(kinser_relaxed(4));
  cases.push_back(binary_spike(4));
  for (const Matroid& M : cases) {
    SearchConfig on, off, generic, generic_off;
    off.symmetry_pruning = false;
    generic.generic_engine = true;
    generic_off.generic_engine = true;
    generic_off.symmetry_pruning = false;
    const auto a = search_bad_family(M, 4, on);
    const auto b = search_bad_family(M, 4, off);
    const auto c = search_bad_family(M, 4, generic);
    const auto d = search_bad_family(M, 4, generic_off);
    REQUIRE(a.has_value() == b.has_value());
    REQUIRE(a.has_value() == c.has_value());
    REQUIRE(a.has_value() == d.has_value());
    if (a) {
      CHECK(a->family == b->family);
      CHECK(a->family == c->family);
      CHECK(a->family == d->family);
    }
  }
}

TEST_CASE("pruning at n = 5 on the Vamos matroid") {
  const Matroid V8 = kinser_relaxed(4);
  SearchConfig off;
  off.symmetry_pruning = false;
  const auto a = search_bad_family(V8, 5, {});
  const auto b = search_bad_family(V8, 5, off);
  REQUIRE(a);
  REQUIRE(b);
  CHECK(a->family == b->family);
}

TEST_CASE("worker count does not change the result") {
  std::vector<Matroid> cases = z4_relaxations();
  cases.push_back(kinser_relaxed(4));
  for (const Matroid& M : cases) {
    const auto one = search_bad_family(M, 4, {});
    for (int w : {2, 3, 4}) {
      SearchConfig cfg;
      cfg.parallel_width = w;
      const auto many = search_bad_family(M, 4, cfg);
      REQUIRE(one.has_value() == many.has_value());
      if (one) CHECK(one->family == many->family);
      cfg.generic_engine = true;
      const auto gen = search_bad_family(M, 4, cfg);
      REQUIRE(one.has_value() == gen.has_value());
      if (one) CHECK(one->family == gen->family);
    }
  }
  SearchConfig cfg;
  cfg.parallel_width = 3;
  SearchStats s1, s3;
  search_bad_family(binary_spike(4), 4, {}, &s1);
  search_bad_family(binary_spike(4), 4, cfg, &s3);
  CHECK(s1.tuples_examined == s3.tuples_examined);
  CHECK(s1.rank_queries == s3.rank_queries);
}

TEST_CASE("relaxed spikes") {
  const Matroid Z4 = binary_spike(4);
  for (SubsetMask t : mixed_transversals(4)) {
    const Verdict v = membership(relax(Z4, t), 4);
    CHECK_FALSE(v.in_class);
  }
}

TEST_CASE("bad families extend up the hierarchy") {
  for (const Matroid& M : z4_relaxations()) {
    const auto cert = search_bad_family(M, 4, {});
    if (!cert) continue;
    Family f = cert->family;
    const int margin = evaluate(M, f).margin();
    for (int n = 5; n <= 7; ++n) {
      f = extend_family(f);
      REQUIRE(evaluate(M, f).margin() == margin);
    }
  }
  const Matroid V8 = kinser_relaxed(4);
  CHECK_FALSE(membership(V8, 5).in_class);
}

TEST_CASE("class membership is closed under minors") {
  auto [F7, F7m] = fano_pair();
  for (const Matroid& M : {F7, binary_spike(4), uniform(3, 6)}) {
    REQUIRE(membership(M, 4).in_class);
    for (int e = 0; e < M.size(); ++e) {
      INFO(M.label() << " e=" << e);
      CHECK(membership(delete_element(M, e).matroid, 4).in_class);
      CHECK(membership(contract_element(M, e).matroid, 4).in_class);
    }
  }
}

TEST_CASE("class membership is closed under direct sums") {
  auto [F7, F7m] = fano_pair();
  CHECK(membership(direct_sum(uniform(2, 4), uniform(1, 2)).matroid, 4).in_class);
  CHECK(membership(direct_sum(F7, uniform(1, 1)).matroid, 4).in_class);
}

TEST_CASE("verdicts agree with the dual at n = 4") {
  auto [F7, F7m] = fano_pair();
  std::vector<Matroid> cases = z4_relaxations();
  cases.push_back(kinser_relaxed(4));
  cases.push_back(binary_spike(4));
  cases.push_back(F7);
  cases.push_back(uniform(3, 6));
  for (const Matroid& M : cases) {
    INFO(M.label());
    CHECK(membership(M, 4).in_class == dual_membership(M, 4).in_class);
  }
}

TEST_CASE("representable matroids at n = 5") {
  auto [F7, F7m] = fano_pair();
  CHECK(membership(F7, 5).in_class);
  CHECK(membership(F7m, 5).in_class);
  CHECK(membership(dowling(cyclic_group(2), 3), 4).in_class);
}
