#include <doctest.h>

#include <set>

#include <mbar/stable_graph.hpp>

#include "oracles.hpp"

using namespace mbar;

namespace
{

std::set<std::string> encodings(const std::vector<Stratum> &strata)
{
    std::set<std::string> out;
    for (const auto &s : strata)
        out.insert(s.iso.canonical_encoding);
    return out;
}

std::vector<std::string> names(const std::vector<BoundaryComponent> &list)
{
    std::vector<std::string> out;
    for (const auto &a : list)
        out.push_back(a.name());
    return out;
}

} // namespace

TEST_CASE("strata counts")
{
    CHECK(enumerate_stable_graphs(0, 3).size() == 1);
    CHECK(enumerate_stable_graphs(0, 4).size() == 4);
    CHECK(enumerate_stable_graphs(1, 1).size() == 2);
    CHECK(enumerate_stable_graphs(2, 0).size() == 7);
    CHECK(enumerate_stable_graphs(1, 2).size() == 5);
    CHECK(enumerate_stable_graphs(0, 5).size() == 26);
    CHECK(enumerate_stable_graphs(3, 0).size() == 42);
    CHECK_THROWS_AS(enumerate_stable_graphs(0, 2), ContractError);
    CHECK_THROWS_AS(enumerate_stable_graphs(1, 0), ContractError);
}

TEST_CASE("strata agree with the half-edge brute-force generator")
{
    for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 3}, {0, 4}, {1, 1}, {2, 0}, {1, 2}, {0, 5}, {2, 1}, {1, 3}}) {
        CAPTURE(g);
        CAPTURE(n);
        const auto strata = enumerate_stable_graphs(g, n);
        const auto brute = oracle::brute_strata(g, n);
        REQUIRE(strata.size() == brute.size());
        std::vector<int> hits(brute.size(), 0);
        for (const auto &s : strata) {
            int matches = 0;
            for (std::size_t i = 0; i < brute.size(); ++i)
                if (oracle::isomorphic(s.representative, brute[i])) {
                    ++matches;
                    ++hits[i];
                }
            CHECK(matches == 1);
        }
        for (int h : hits)
            CHECK(h == 1);
    }
}

TEST_CASE("strata are valid, bounded and canonically tagged")
{
    for (auto [g, n] : std::vector<std::pair<int, int>>{{2, 0}, {1, 2}, {0, 5}, {2, 1}}) {
        for (const auto &s : enumerate_stable_graphs(g, n)) {
            const auto &r = s.representative;
            CHECK_FALSE(validate(r).has_value());
            CHECK(genus(r) == g);
            CHECK(r.labeled_leg_count() == n);
            CHECK(r.edge_count() <= 3 * g - 3 + n);
            CHECK(canonical_form(r) == s.iso);
            for (const auto &v : r.vertices)
                CHECK_FALSE(v.pointed);
        }
    }
}

TEST_CASE("strata are closed under single-edge contraction")
{
    for (auto [g, n] : std::vector<std::pair<int, int>>{{2, 0}, {1, 2}, {0, 5}, {2, 1}}) {
        const auto strata = enumerate_stable_graphs(g, n);
        const auto all = encodings(strata);
        for (const auto &s : strata)
            for (const auto &e : s.representative.edges())
                CHECK(all.count(canonical_form(contract_edges(s.representative, std::vector<int>{e.h1})).canonical_encoding) == 1);
    }
}

TEST_CASE("edge bound and determinism")
{
    const auto full = enumerate_stable_graphs(2, 1);
    const auto capped = enumerate_stable_graphs(2, 1, 2);
    std::size_t expected = 0;
    for (const auto &s : full)
        if (s.representative.edge_count() <= 2)
            ++expected;
    CHECK(capped.size() == expected);

    const auto parallel = enumerate_stable_graphs(3, 0, std::nullopt, 4);
    const auto serial = enumerate_stable_graphs(3, 0);
    REQUIRE(parallel.size() == serial.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(parallel[i].iso == serial[i].iso);
        CHECK(parallel[i].representative == serial[i].representative);
    }
    for (std::size_t i = 1; i < serial.size(); ++i)
        CHECK(serial[i - 1].representative.edge_count() <= serial[i].representative.edge_count());
}

TEST_CASE("elementary divisors")
{
    CHECK(names(enumerate_elementary(2, 0)) == std::vector<std::string>{"irr", "sep:1"});
    CHECK(names(enumerate_elementary(1, 1)) == std::vector<std::string>{"irr"});
    // (1, {}) and (1, {1}) describe the same divisor when both sides have genus 1.
    CHECK(names(enumerate_elementary(2, 1)) == std::vector<std::string>{"irr", "sep:1"});
    CHECK(names(enumerate_elementary(0, 4)) ==
          std::vector<std::string>{"sep:0:{1,2}", "sep:0:{1,3}", "sep:0:{1,4}"});
    CHECK(names(enumerate_elementary(3, 1)) == std::vector<std::string>{"irr", "sep:1", "sep:1:{1}"});
}

TEST_CASE("elementary list matches one-edge strata")
{
    for (auto [g, n] : std::vector<std::pair<int, int>>{{2, 0}, {2, 1}, {1, 2}, {0, 5}, {3, 2}, {4, 0}, {2, 3}}) {
        CAPTURE(g);
        CAPTURE(n);
        const auto elementary = enumerate_elementary(g, n);
        std::set<std::string> from_list;
        for (const auto &a : elementary) {
            const auto graph = elementary_graph(a, g, n);
            CHECK_FALSE(validate(graph).has_value());
            CHECK(graph.edge_count() == 1);
            CHECK(genus(graph) == g);
            from_list.insert(canonical_form(graph).canonical_encoding);
        }
        CHECK(from_list.size() == elementary.size());
        std::set<std::string> from_strata;
        for (const auto &s : enumerate_stable_graphs(g, n, 1))
            if (s.representative.edge_count() == 1)
                from_strata.insert(s.iso.canonical_encoding);
        CHECK(from_list == from_strata);
    }
}

TEST_CASE("elementary graph automorphisms")
{
    CHECK(automorphisms(elementary_graph(BoundaryComponent::irr(), 3, 2)).order == 2);
    CHECK(automorphisms(elementary_graph(BoundaryComponent::separating(1, {}), 3, 2)).order == 1);
    CHECK(automorphisms(elementary_graph(BoundaryComponent::separating(2, {}), 4, 0)).order == 2);
}
