#pragma once

// Shared helpers for the test binaries: fixture paths, a seeded generator and
// small random sizing scenarios.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ohres/model.hpp"

namespace testsupport {

inline std::string source_path(const std::string& rel)
{
    return std::string(OHRES_SOURCE_DIR) + "/" + rel;
}

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

    std::vector<double> series(std::size_t n, double lo, double hi)
    {
        std::vector<double> v(n);
        for (auto& x : v) x = uniform(lo, hi);
        return v;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

inline ohres::model::SubsystemCost flat_cost(double capital)
{
    ohres::model::SubsystemCost c;
    c.capital = capital;
    return c;
}

// Random scenario small enough for exhaustive enumeration: horizon 2..4, at
// most two active resources with count bounds <= 4, storage on or off.
inline ohres::model::SizingScenario small_scenario(Gen& g)
{
    using namespace ohres::model;
    SizingScenario s;
    s.region = "random";
    const std::size_t T = static_cast<std::size_t>(g.integer(2, 4));
    s.load = g.series(T, 0.0, 150.0);
    if (g.coin(0.1)) s.load.assign(T, 0.0);
    for (Resource r : kResources) s.generation[index_of(r)].assign(T, 0.0);
    for (Resource r : kResources) s.bounds[r] = 0.0;

    const int first = g.integer(0, 3);
    const int second = (first + g.integer(1, 3)) % 4;
    for (int idx : {first, second}) {
        const auto r = static_cast<Resource>(idx);
        s.generation[index_of(r)] = g.series(T, 0.0, 90.0);
        if (g.coin(0.2)) s.generation[index_of(r)][static_cast<std::size_t>(g.integer(0, static_cast<int>(T) - 1))] = 0.0;
        s.bounds[r] = g.integer(1, 4);
    }

    CostBook book;
    book.lifetime_years = g.uniform(1.0, 25.0);
    book.bess_degradation = g.uniform(0.0, 0.06);
    for (Resource r : kResources) {
        book.unit(r) = flat_cost(g.uniform(100.0, 2000.0));
        book.unit(r).om_per_year = g.uniform(0.0, 20.0);
        book.unit(r).precommissioning = g.uniform(0.0, 50.0);
    }
    book.bess = flat_cost(g.uniform(0.5, 8.0));
    book.bess.om_per_year = g.uniform(0.0, 0.2);
    s.costs = book;

    s.bess.enabled = g.coin(0.6);
    s.bess.charge_efficiency = g.uniform(0.7, 1.0);
    s.bess.discharge_efficiency = g.uniform(0.7, 1.0);
    s.bess.soc_min = g.uniform(0.0, 0.3);
    s.bess.soc_max = g.uniform(0.7, 1.0);
    if (g.coin(0.3)) s.bess.p_max_discharge = g.uniform(10.0, 80.0);
    if (g.coin(0.3)) s.bess.p_max_charge = g.uniform(10.0, 80.0);
    s.allow_curtailment = g.coin(0.85);
    return s;
}

}  // namespace testsupport
