#include "jnsharp/random.hpp"

#include <random>
#include <set>
#include <vector>

#include "jnsharp/errors.hpp"

namespace jnsharp {

StepFunction random_step_function(const RandomSpec& spec) {
    if (spec.cells < 1) throw PreconditionError("random: cells must be >= 1");
    if (spec.value_steps < 1) throw PreconditionError("random: value_steps must be >= 1");
    if (!(spec.value_min < spec.value_max)) throw PreconditionError("random: value_min must be < value_max");
    const long grid = spec.grid == 0 ? 4L * spec.cells : spec.grid;
    if (grid < spec.cells) throw PreconditionError("random: breakpoint grid coarser than the cell count");

    std::mt19937_64 rng(spec.seed);
    auto uniform = [&rng](std::uint64_t n) { return rng() % n; };

    std::set<long> ticks;
    while (ticks.size() + 1 < static_cast<std::size_t>(spec.cells)) {
        ticks.insert(1 + static_cast<long>(uniform(static_cast<std::uint64_t>(grid - 1))));
    }
    const Interval domain(spec.domain_a, spec.domain_b);
    std::vector<Rational> bps;
    for (long t : ticks) bps.push_back(spec.domain_a + domain.length() * Rational(t, grid));

    const Rational span = spec.value_max - spec.value_min;
    const auto steps = static_cast<std::uint64_t>(spec.value_steps);
    std::vector<Rational> vals;
    long prev = -1;
    for (int c = 0; c < spec.cells; ++c) {
        long r = 0;
        do {
            r = static_cast<long>(uniform(steps + 1));
        } while (r == prev);
        prev = r;
        vals.push_back(spec.value_min + span * Rational(r, spec.value_steps));
    }
    return {domain, std::move(bps), std::move(vals)};
}

}  // namespace jnsharp
