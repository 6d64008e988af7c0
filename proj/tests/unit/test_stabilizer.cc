// Copyright 2026 The cohlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "cohlab/stabilizer.h"

#include <gtest/gtest.h>

#include <numeric>

#include "support/dense_oracle.h"
#include "support/random_states.h"

using namespace cohlab;
using cohlab::testing::random_basis;
using cohlab::testing::random_gate;
using cohlab::testing::random_pauli;
using cohlab::testing::random_state;

namespace {

StabilizerTableau bell() {
    return StabilizerTableau::from_generators(2, {PauliString::parse("XX"), PauliString::parse("ZZ")});
}

StabilizerTableau ghz(size_t n) {
    std::vector<PauliString> g;
    for (size_t i = 0; i + 1 < n; i++) {
        PauliString p(n);
        p.set(i, 'X');
        p.set(i + 1, 'X');
        g.push_back(p);
    }
    g.push_back(PauliString::parse(std::string(n, 'Z')));
    return StabilizerTableau::from_generators(n, g);
}

// Brute-force subsystem entropy from the full group (small n only).
size_t entropy_by_group(const StabilizerTableau &t, const std::vector<size_t> &region) {
    auto gens = t.generators();
    size_t ns = gens.size(), inside = 0;
    for (uint32_t mask = 0; mask < (1u << ns); mask++) {
        PauliString p(t.num_qubits());
        for (size_t i = 0; i < ns; i++) {
            if ((mask >> i) & 1) {
                p = multiply_with_phase(p, gens[i]).pauli;
            }
        }
        bool ok = true;
        for (size_t q = 0; q < t.num_qubits(); q++) {
            bool in = std::find(region.begin(), region.end(), q) != region.end();
            ok = ok && (in || p.at(q) == 'I');
        }
        inside += ok;
    }
    size_t log2 = 0;
    while ((size_t{1} << log2) < inside) {
        log2++;
    }
    return region.size() - log2;
}

}  // namespace

TEST(Tableau, ProductStates) {
    auto t = StabilizerTableau::product_state("XzY.");
    EXPECT_EQ(t.num_qubits(), 4u);
    EXPECT_EQ(t.entropy(), 1u);
    EXPECT_TRUE(t.group_contains(PauliString::parse("XIII")));
    bool sign = false;
    EXPECT_TRUE(t.group_contains(PauliString::parse("IZII"), &sign));
    EXPECT_TRUE(sign);
    EXPECT_FALSE(t.group_contains(PauliString::parse("IIIX")));
    t.check_invariants();
    EXPECT_THROW(StabilizerTableau::product_state("XQ"), std::invalid_argument);
}

TEST(Tableau, FromGeneratorsRejectsBadInput) {
    EXPECT_THROW(StabilizerTableau::from_generators(1, {PauliString::parse("X"), PauliString::parse("Z")}),
                 std::invalid_argument);
    EXPECT_THROW(StabilizerTableau::from_generators(2, {PauliString::parse("XX"), PauliString::parse("XX")}),
                 std::invalid_argument);
    EXPECT_THROW(StabilizerTableau::from_generators(2, {PauliString::parse("XX"), PauliString::parse("-XX")}),
                 std::invalid_argument);
}

TEST(Tableau, GateExamples) {
    auto t = StabilizerTableau::product_state("XX");
    t.cnot(0, 1);
    EXPECT_TRUE(t.same_state(StabilizerTableau::product_state("XX")));
    auto u = StabilizerTableau::product_state("X");
    EXPECT_EQ(coherence(u, Axis::X), 0u);
    u.phase(0);
    EXPECT_TRUE(u.same_state(StabilizerTableau::product_state("Y")));
    EXPECT_EQ(coherence(u, Axis::X), 1u);
    EXPECT_THROW(u.phase(1), std::out_of_range);
    EXPECT_THROW(t.cnot(0, 0), std::invalid_argument);
}

TEST(Tableau, CnotPreservesXZCoherence) {
    Rng rng(11);
    for (int i = 0; i < 100; i++) {
        size_t n = 2 + uniform_below(rng, 10);
        auto t = random_state(n, rng, coin(rng));
        size_t cx = coherence(t, Axis::X), cz = coherence(t, Axis::Z), s = t.entropy();
        for (int k = 0; k < 20; k++) {
            size_t a = uniform_below(rng, n), b = (a + 1 + uniform_below(rng, n - 1)) % n;
            t.cnot(a, b);
        }
        ASSERT_EQ(coherence(t, Axis::X), cx);
        ASSERT_EQ(coherence(t, Axis::Z), cz);
        ASSERT_EQ(t.entropy(), s);
    }
}

TEST(Tableau, MeasureExamples) {
    Rng rng(12);
    auto t = StabilizerTableau::product_state("X");
    auto r = t.measure(0, Axis::X, MeasurePolicy::random(rng));
    EXPECT_EQ(r.kind, MeasureCase::NO_EFFECT);
    EXPECT_FALSE(r.outcome);
    EXPECT_THROW(t.measure(0, Axis::X, MeasurePolicy::postselect(true)), PostselectionError);

    r = t.measure(0, Axis::Z, MeasurePolicy::forced(true));
    EXPECT_EQ(r.kind, MeasureCase::STATE_CHANGING);
    EXPECT_TRUE(t.same_state(StabilizerTableau::product_state("z")));
    EXPECT_EQ(coherence(t, Axis::X), 1u);

    StabilizerTableau m(2);
    r = m.measure(PauliString::parse("XX"), MeasurePolicy::postselect(false));
    EXPECT_EQ(r.kind, MeasureCase::ENTROPY_REDUCING);
    EXPECT_EQ(m.entropy(), 1u);
}

TEST(Tableau, RandomOutcomesAreBalanced) {
    Rng rng(13);
    int ones = 0, trials = 4000;
    for (int i = 0; i < trials; i++) {
        auto t = StabilizerTableau::product_state("X");
        ones += t.measure(0, Axis::Z, MeasurePolicy::random(rng)).outcome;
    }
    // chi^2 with one degree of freedom, p ~ 0.001 threshold.
    double e = trials / 2.0;
    double chi2 = ((ones - e) * (ones - e) + (trials - ones - e) * (trials - ones - e)) / e;
    EXPECT_LT(chi2, 10.83);
}

TEST(Tableau, DephaseExamples) {
    auto t = StabilizerTableau::product_state("Z");
    EXPECT_TRUE(t.dephase(PauliString::parse("X")));
    EXPECT_EQ(t.entropy(), 1u);
    auto u = StabilizerTableau::product_state("X");
    EXPECT_FALSE(u.dephase(PauliString::parse("X")));
    EXPECT_TRUE(u.same_state(StabilizerTableau::product_state("X")));
}

TEST(Tableau, SnapshotRoundTrip) {
    Rng rng(14);
    for (int i = 0; i < 100; i++) {
        auto t = random_state(1 + uniform_below(rng, 12), rng, true);
        auto back = StabilizerTableau::from_snapshot(t.to_snapshot());
        ASSERT_TRUE(back.same_state(t));
        ASSERT_EQ(back.to_snapshot(), t.to_snapshot());
    }
    EXPECT_THROW(StabilizerTableau::from_snapshot("3"), std::invalid_argument);
}

TEST(Tableau, InvariantsUnderRandomPrograms) {
    Rng rng(15);
    for (int i = 0; i < 300; i++) {
        size_t n = 1 + uniform_below(rng, 9);
        auto t = random_state(n, rng, true);
        for (int s = 0; s < 30; s++) {
            size_t before = t.entropy();
            switch (uniform_below(rng, 3)) {
                case 0:
                    t.apply(random_gate(n, rng));
                    ASSERT_EQ(t.entropy(), before);
                    break;
                case 1: {
                    auto r = t.measure(random_pauli(n, rng), MeasurePolicy::random(rng));
                    ASSERT_EQ(before - t.entropy(), r.kind == MeasureCase::ENTROPY_REDUCING ? 1u : 0u);
                    // Measuring again is deterministic and repeats the outcome.
                    auto again = t.measure(r.op, MeasurePolicy::random(rng));
                    ASSERT_TRUE(again.deterministic());
                    ASSERT_EQ(again.outcome, r.outcome);
                    break;
                }
                default: {
                    bool changed = t.dephase(random_pauli(n, rng));
                    ASSERT_EQ(t.entropy() - before, changed ? 1u : 0u);
                }
            }
            t.check_invariants();
        }
    }
}

// Oracle: 2^n x 2^n density matrices for n <= 4.
TEST(Tableau, MatchesDenseOracle) {
    Rng rng(16);
    for (int prog = 0; prog < 300; prog++) {
        size_t n = 1 + uniform_below(rng, 4);
        auto t = random_state(n, rng, true, 2);
        dense::Mat rho = dense::density(t);
        for (int s = 0; s < 12; s++) {
            switch (uniform_below(rng, 3)) {
                case 0: {
                    Gate g = random_gate(n, rng);
                    t.apply(g);
                    rho = dense::conjugate(dense::gate_matrix(g, n), rho);
                    break;
                }
                case 1: {
                    PauliString p = random_pauli(n, rng);
                    double p1 = dense::probability(rho, p, true);
                    auto r = t.measure(p, MeasurePolicy::random(rng));
                    if (r.deterministic()) {
                        ASSERT_NEAR(p1, r.outcome ? 1.0 : 0.0, 1e-9);
                    } else {
                        ASSERT_NEAR(p1, 0.5, 1e-9);
                    }
                    rho = dense::collapse(rho, p, r.outcome);
                    break;
                }
                default: {
                    PauliString p = random_pauli(n, rng);
                    t.dephase(p);
                    rho = dense::dephase(rho, p);
                }
            }
            ASSERT_LT(dense::distance(rho, dense::density(t)), 1e-9) << t.to_snapshot();
            ASSERT_NEAR(dense::stabilizer_entropy(rho), double(t.entropy()), 1e-9);
            LocalPauliBasis b = random_basis(n, rng);
            ASSERT_NEAR(dense::coherence(rho, b), double(coherence(t, b)), 1e-9);
        }
    }
}

TEST(CssGauge, Examples) {
    auto g = css_gauge(StabilizerTableau::product_state("XXXX"), LocalPauliBasis::uniform(4, Axis::X));
    EXPECT_EQ(g.n_x, 4u);
    EXPECT_EQ(g.n_z + g.n_y, 0u);
    g = css_gauge(bell(), LocalPauliBasis::uniform(2, Axis::X));
    EXPECT_EQ(g.n_x, 1u);
    EXPECT_EQ(g.n_z, 1u);
    EXPECT_EQ(g.n_y, 0u);
    g = css_gauge(ghz(3), LocalPauliBasis::uniform(3, Axis::X));
    EXPECT_EQ(g.n_x, 2u);
    EXPECT_EQ(g.n_z, 1u);
}

TEST(CssGauge, BlockStructure) {
    Rng rng(17);
    for (int i = 0; i < 300; i++) {
        size_t n = 1 + uniform_below(rng, 10);
        auto t = random_state(n, rng, true);
        LocalPauliBasis b = random_basis(n, rng);
        auto g = css_gauge(t, b);
        ASSERT_EQ(g.n_x + g.n_y + g.n_z, t.num_stabilizers());
        ASSERT_TRUE(StabilizerTableau::from_generators(n, g.generators).same_state(t));
        for (size_t r = 0; r < g.generators.size(); r++) {
            PauliString rel = relabel_to_x(b, g.generators[r]);
            if (r < g.n_x) {
                ASSERT_FALSE(rel.zs.any());
            } else if (r < g.n_x + g.n_z) {
                ASSERT_FALSE(rel.xs.any());
            }
        }
        ASSERT_EQ(coherence(t, b), g.n_y + g.n_z);
    }
}

TEST(Coherence, Examples) {
    EXPECT_EQ(coherence(StabilizerTableau::product_state("Z"), Axis::X), 1u);
    EXPECT_EQ(coherence(StabilizerTableau::product_state("XXZZZ"), Axis::X), 3u);
    EXPECT_EQ(coherence(StabilizerTableau::product_state("XX..ZZZ"), Axis::X), 3u);
    Rng rng(18);
    EXPECT_EQ(coherence_oracle(StabilizerTableau::product_state("XXX"), LocalPauliBasis::uniform(3, Axis::X), rng),
              0u);
    EXPECT_EQ(coherence_oracle(bell(), LocalPauliBasis::uniform(2, Axis::X), rng), 1u);
}

TEST(Coherence, MatchesMeasurementOracle) {
    Rng rng(19);
    for (int i = 0; i < 1000; i++) {
        size_t n = 1 + uniform_below(rng, 16);
        auto t = random_state(n, rng, coin(rng));
        LocalPauliBasis b = random_basis(n, rng);
        ASSERT_EQ(coherence(t, b), coherence_oracle(t, b, rng));
    }
}

TEST(Entropy, Examples) {
    auto p = StabilizerTableau::product_state("XYZxyz");
    for (size_t a = 0; a <= 6; a++) {
        EXPECT_EQ(subsystem_entropy(p, 0, a), 0u);
    }
    std::vector<size_t> r0 = {0};
    EXPECT_EQ(subsystem_entropy(bell(), r0), 1u);
    auto m = StabilizerTableau::product_state("X..");
    EXPECT_EQ(subsystem_entropy(m, 0, 3), 2u);
    EXPECT_EQ(subsystem_entropy(m, 1, 2), 1u);
}

TEST(Entropy, MatchesGroupCounting) {
    Rng rng(20);
    for (int i = 0; i < 300; i++) {
        size_t n = 1 + uniform_below(rng, 8);
        auto t = random_state(n, rng, true);
        std::vector<size_t> region;
        for (size_t q = 0; q < n; q++) {
            if (coin(rng)) {
                region.push_back(q);
            }
        }
        ASSERT_EQ(subsystem_entropy(t, region), entropy_by_group(t, region));
        std::vector<size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        auto pref = prefix_entropies(t, order);
        ASSERT_EQ(pref.size(), n + 1);
        for (size_t x = 0; x <= n; x++) {
            std::vector<size_t> head(order.begin(), order.begin() + x);
            ASSERT_EQ(pref[x], subsystem_entropy(t, head));
        }
    }
}

// Entanglement of any region is bounded by the coherence of a pure state.
TEST(Entropy, BoundedByCoherence) {
    Rng rng(21);
    for (int i = 0; i < 1000; i++) {
        size_t n = 2 + uniform_below(rng, 14);
        auto t = random_state(n, rng, false);
        LocalPauliBasis b = random_basis(n, rng);
        size_t c = coherence(t, b);
        ASSERT_LE(max_contiguous_entropy(t, n), c);
        for (size_t a = 0; a < n; a++) {
            for (size_t e = a; e <= n; e++) {
                ASSERT_LE(subsystem_entropy(t, a, e), c);
            }
        }
    }
}

TEST(CoherentInformation, Examples) {
    // Bell pairs between system [0, 10) and ancillas [10, 20).
    std::vector<PauliString> g;
    for (size_t i = 0; i < 10; i++) {
        PauliString x(20), z(20);
        x.set(i, 'X');
        x.set(10 + i, 'X');
        z.set(i, 'Z');
        z.set(10 + i, 'Z');
        g.push_back(x);
        g.push_back(z);
    }
    auto t = StabilizerTableau::from_generators(20, g);
    std::vector<size_t> sys(10), anc(10);
    std::iota(sys.begin(), sys.end(), 0);
    std::iota(anc.begin(), anc.end(), 10);
    EXPECT_EQ(coherent_information(t, sys, anc), 10);
    auto prod = StabilizerTableau::product_state(std::string(20, 'X'));
    EXPECT_EQ(coherent_information(prod, sys, anc), 0);
    std::vector<size_t> overlap = {9};
    EXPECT_THROW(coherent_information(t, sys, overlap), std::invalid_argument);
}
