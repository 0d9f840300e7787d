#include <catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <vector>

#include "kinser/kinser.hpp"
#include "oracles.hpp"

using namespace kinser;

namespace {

std::vector<Matroid> small_catalog() {
  auto [F7, F7m] = fano_pair();
  return {uniform(2, 4), uniform(3, 6), uniform(0, 3), F7, F7m, kinser::kinser(4), kinser_relaxed(4), binary_spike(4),
          dowling(cyclic_group(2), 3)};
}

std::vector<Matroid> catalog_upto16() {
  auto out = small_catalog();
  auto [F7, F7m] = fano_pair();
  out.push_back(binary_spike(6));
  out.push_back(binary_spike(8));
  out.push_back(kinser::kinser(5));
  out.push_back(kinser_relaxed(5));
  out.push_back(kinser_relaxed(5, 3));
  out.push_back(direct_sum(F7, F7m).matroid);
  out.push_back(dowling(cyclic_group(3), 3));
  out.push_back(kinser_base(4));
  return out;
}

}  // namespace

TEST_CASE("mask helpers") {
  CHECK(full_mask(4) == 0xFu);
  CHECK(mask_of({0, 2, 3}) == 0b1101u);
  CHECK(elements_of(0b1101u) == std::vector<ElementId>{0, 2, 3});
  CHECK(format_mask(0) == "-");
  CHECK(format_mask(0b1011u) == "0,1,3");
  CHECK(insert_zero_bit(0b111u, 1) == 0b1101u);
  CHECK(remove_bit(0b1101u, 1) == 0b111u);
  for (SubsetMask x = 0; x < 64; ++x) {
    for (int p = 0; p < 6; ++p) CHECK(remove_bit(insert_zero_bit(x, p), p) == x);
  }
}

TEST_CASE("rank lookups") {
  const Matroid U = uniform(2, 4);
  CHECK(rank(U, mask_of({0, 1, 2})) == 2);
  CHECK(rank(U, 0) == 0);
  CHECK(fano_pair().first.rank() == 3);
  CHECK_THROWS_AS(U.rank(bit(4)), InvalidSubset);
  CHECK_THROWS_AS(Matroid::from_table(0, {0}), SizeCapError);
  CHECK_THROWS_AS(Matroid::from_table(25, {}), SizeCapError);
}

TEST_CASE("closure") {
  const Matroid F7 = fano_pair().first;
  CHECK(closure(F7, mask_of({0, 1})) == mask_of({0, 1, 3}));

  // compare against the GF(2) span of the matrix columns
  const auto rows = fano_rows();
  std::vector<unsigned> col(7);
  for (int j = 0; j < 7; ++j) col[j] = rows[j] | (rows[7 + j] << 1) | (rows[14 + j] << 2);
  for (SubsetMask x = 0; x < 128; ++x) {
    std::vector<unsigned> sel;
    for (int j : elements_of(x)) sel.push_back(col[j]);
    const int rx = oracle::gf2_span_rank(sel);
    REQUIRE(F7.rank(x) == rx);
    SubsetMask cl = 0;
    for (int j = 0; j < 7; ++j) {
      auto with = sel;
      with.push_back(col[j]);
      if (oracle::gf2_span_rank(with) == rx) cl |= bit(j);
    }
    REQUIRE(closure(F7, x) == cl);
  }
  for (SubsetMask f : enumerate(F7, SetKind::flats)) CHECK(closure(F7, f) == f);
  for (SubsetMask b : enumerate(F7, SetKind::bases)) CHECK(closure(F7, b) == F7.ground());
}

TEST_CASE("classify") {
  const Matroid K = kinser::kinser(4);
  const auto& L = *K.layout();
  CHECK(classify(K, L.at("V2") | L.at("V3")).circuit_hyperplane);

  const auto c = classify(uniform(2, 4), mask_of({0, 1, 2}));
  CHECK(c.circuit);
  CHECK_FALSE(c.hyperplane);
  CHECK(c.dependent);
  CHECK(c.spanning);

  const Matroid Z = binary_spike(4);
  CHECK(classify(Z, Z.layout()->at("A")).circuit_hyperplane);

  const Matroid LC = direct_sum(uniform(0, 1), uniform(1, 1)).matroid;
  CHECK(classify(LC, bit(0)).loop);
  CHECK(classify(LC, bit(1)).coloop);
  CHECK_FALSE(classify(LC, bit(1)).loop);
}

TEST_CASE("classify agrees with definitions recomputed from scratch") {
  for (const Matroid& M : small_catalog()) {
    if (M.size() > 10) continue;
    INFO(M.label());
    for (SubsetMask x = 0; x <= M.ground(); ++x) {
      const auto c = classify(M, x);
      const bool indep = oracle::independent(M, x);
      REQUIRE(c.independent == indep);
      REQUIRE(c.dependent == !indep);
      REQUIRE(c.spanning == (M.rank(x) == M.rank()));
      REQUIRE(c.basis == (indep && c.spanning));
      REQUIRE(c.flat == (oracle::closure(M, x) == x));
      REQUIRE(c.circuit == oracle::circuit(M, x));
      REQUIRE(c.hyperplane == (c.flat && M.rank(x) == M.rank() - 1));
      REQUIRE(c.circuit_hyperplane == (c.circuit && c.hyperplane));
    }
  }
}

TEST_CASE("enumerate") {
  const Matroid F7 = fano_pair().first;
  CHECK(enumerate(F7, SetKind::flats).size() == 16);
  CHECK(enumerate(F7, SetKind::circuit_hyperplanes).size() == 7);
  CHECK(enumerate(uniform(1, 1), SetKind::flats) == std::vector<SubsetMask>{0, 1});

  // the 8 even transversals plus the 6 two-leg sets, which are hyperplanes when r = 4
  const Matroid Z4 = binary_spike(4);
  CHECK(enumerate(Z4, SetKind::circuit_hyperplanes).size() == 14);
  CHECK(spike_transversal_circuit_hyperplanes(Z4).size() == 8);

  for (const Matroid& M : small_catalog()) {
    if (M.size() > 10) continue;
    INFO(M.label());
    std::set<SubsetMask> fixed;
    for (SubsetMask x = 0; x <= M.ground(); ++x) fixed.insert(oracle::closure(M, x));
    const auto flats = enumerate(M, SetKind::flats);
    CHECK(std::vector<SubsetMask>(fixed.begin(), fixed.end()) == flats);
    for (auto kind : {SetKind::flats, SetKind::circuits, SetKind::bases, SetKind::hyperplanes,
                      SetKind::circuit_hyperplanes}) {
      const auto v = enumerate(M, kind);
      CHECK(std::is_sorted(v.begin(), v.end()));
      CHECK(std::adjacent_find(v.begin(), v.end()) == v.end());
    }
  }
}

TEST_CASE("closure identities") {
  for (const Matroid& M : catalog_upto16()) {
    if (M.size() > 14) continue;
    INFO(M.label());
    for (SubsetMask x = 0; x <= M.ground(); ++x) {
      const SubsetMask c = closure(M, x);
      REQUIRE(M.rank(c) == M.rank(x));
      REQUIRE(closure(M, c) == c);
      REQUIRE(is_subset(x, c));
    }
  }
}

TEST_CASE("axiom validators accept catalog matroids") {
  for (const Matroid& M : catalog_upto16()) {
    INFO(M.label());
    CHECK_FALSE(validate_axioms(M, AxiomSystem::rank).has_value());
    CHECK_FALSE(validate_axioms(M, AxiomSystem::closure).has_value());
    if (M.size() <= 12) {
      CHECK_FALSE(validate_axioms(M, AxiomSystem::circuits).has_value());
      CHECK_FALSE(validate_axioms(M, AxiomSystem::independence).has_value());
    }
  }
}

TEST_CASE("axiom validators report violations") {
  std::vector<std::uint8_t> t{0, 2, 1, 2};
  auto v = validate_axioms(2, std::span<const std::uint8_t>(t), AxiomSystem::rank);
  REQUIRE(v);
  CHECK(v->axiom == "R1");
  CHECK(v->witness == std::vector<SubsetMask>{1});

  std::vector<std::uint8_t> nonmono{0, 1, 1, 0};
  v = validate_axioms(2, std::span<const std::uint8_t>(nonmono), AxiomSystem::rank);
  REQUIRE(v);
  CHECK(v->axiom == "R2");

  // U_{1,2} + U_{1,1} with {0,2} forced down to rank 1
  std::vector<std::uint8_t> sub{0, 1, 1, 1, 1, 1, 2, 2};
  v = validate_axioms(3, std::span<const std::uint8_t>(sub), AxiomSystem::rank);
  REQUIRE(v);
  CHECK(v->axiom == "R3");

  // {0} cannot be augmented from {1,2}
  const std::vector<SubsetMask> bad{mask_of({0, 1}), mask_of({0, 2})};
  v = validate_axioms(3, std::span<const SubsetMask>(bad), AxiomSystem::independence);
  REQUIRE(v);
  CHECK(v->axiom == "I3");
  CHECK(v->witness == std::vector<SubsetMask>{bit(0), mask_of({1, 2})});
  v = validate_axioms(3, std::span<const SubsetMask>(bad), AxiomSystem::circuits);
  REQUIRE(v);
  CHECK(v->axiom == "C3");

  const std::vector<SubsetMask> nested{bit(0), mask_of({0, 1})};
  v = validate_axioms(3, std::span<const SubsetMask>(nested), AxiomSystem::circuits);
  REQUIRE(v);
  CHECK(v->axiom == "C2");

  const std::vector<SubsetMask> empty_circuit{0};
  v = validate_axioms(2, std::span<const SubsetMask>(empty_circuit), AxiomSystem::circuits);
  REQUIRE(v);
  CHECK(v->axiom == "C1");

  std::vector<std::uint8_t> big(std::size_t{1} << 17, 0);
  CHECK_THROWS_AS(validate_axioms(17, std::span<const std::uint8_t>(big), AxiomSystem::rank), SizeCapError);

  CHECK_THROWS_AS(Matroid::from_table(2, {0, 2, 1, 2}), NotAMatroid);
  try {
    Matroid::from_table(2, {0, 2, 1, 2});
  } catch (const NotAMatroid& e) {
    CHECK(e.violation().axiom == "R1");
  }
}

TEST_CASE("spike circuits satisfy the circuit axioms") {
  const Matroid Z4 = binary_spike(4);
  const auto all = enumerate(Z4, SetKind::circuits);
  CHECK_FALSE(validate_axioms(8, std::span<const SubsetMask>(all), AxiomSystem::circuits).has_value());
  CHECK_FALSE(validate_axioms(8, std::span<const SubsetMask>(all), AxiomSystem::rank).has_value());
  CHECK_FALSE(validate_axioms(8, std::span<const SubsetMask>(all), AxiomSystem::closure).has_value());
  const auto listed = spike_nonspanning_circuits(4);
  CHECK_FALSE(validate_axioms(8, std::span<const SubsetMask>(listed), AxiomSystem::circuits).has_value());
}

TEST_CASE("matroid_from_circuits") {
  const std::vector<SubsetMask> triples{mask_of({0, 1, 2}), mask_of({0, 1, 3}), mask_of({0, 2, 3}),
                                        mask_of({1, 2, 3})};
  CHECK(matroid_from_circuits(4, 2, triples) == uniform(2, 4));

  const Matroid Z4 = matroid_from_circuits(8, 4, spike_nonspanning_circuits(4));
  CHECK(Z4.size() == 8);
  CHECK(Z4.rank() == 4);

  const std::vector<SubsetMask> nested{bit(0), mask_of({0, 1})};
  try {
    matroid_from_circuits(3, 2, nested);
    FAIL("expected NotAMatroid");
  } catch (const NotAMatroid& e) {
    CHECK(e.violation().axiom == "C2");
  }
  CHECK_THROWS_AS(matroid_from_circuits(4, 1, triples), PreconditionError);
  CHECK_THROWS_AS(matroid_from_circuits(3, 2, std::vector<SubsetMask>{bit(5)}), InvalidSubset);

  for (int r : {4, 6}) {
    const auto input = spike_nonspanning_circuits(r);
    const Matroid Z = matroid_from_circuits(2 * r, r, input);
    std::vector<SubsetMask> nonspanning;
    for (SubsetMask c : enumerate(Z, SetKind::circuits)) {
      if (Z.rank(c) < r) nonspanning.push_back(c);
    }
    CHECK(nonspanning == input);
  }
}

TEST_CASE("fingerprints") {
  const Matroid a = uniform(2, 4);
  const std::string f = content_fingerprint(a);
  CHECK(f.size() == 16);
  CHECK(f == content_fingerprint(uniform(2, 4).relabeled("other")));
  CHECK(f != content_fingerprint(uniform(1, 4)));
  CHECK(f != content_fingerprint(uniform(2, 5)));
}

TEST_CASE("sampled validation above the eager limit") {
  // m = 17: R1 is still checked everywhere
  std::vector<std::uint8_t> t(std::size_t{1} << 17, 0);
  t[bit(3)] = 2;
  CHECK_THROWS_AS(Matroid::from_table(17, t), NotAMatroid);
  const Matroid U = uniform(3, 17);
  CHECK(U.rank() == 3);
}
