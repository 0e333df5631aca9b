#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reqcut/graph.hpp"
#include "reqcut/sp_embed.hpp"

namespace reqcut {

/// How groups are drawn for the random families. requirement 0 means a
/// uniform draw from [2, size] per group.
struct GroupSpec {
    std::size_t count = 1;
    std::size_t size = 3;
    int requirement = 2;
};

/// Star with center 0 and leaf i+1 per set i, unit edges. memberships[e]
/// lists the sets containing element e; each element becomes the group
/// {center} + its leaves with requirement 2.
Instance gen_setcover_star(std::size_t num_sets, const std::vector<std::vector<std::size_t>>& memberships);

/// num_cycles edge-disjoint cycles of length cycle_len chained through shared
/// cut vertices, so tau = cycle_len ^ num_cycles.
Instance gen_short_cycles(std::size_t num_cycles, std::size_t cycle_len, const GroupSpec& groups,
                          std::uint64_t seed);

/// Uniform random labelled-attachment tree plus k distinct chords.
Instance gen_bounded_fes(std::size_t n, std::size_t k, std::uint64_t seed, const GroupSpec& groups = {});

Instance gen_random_tree(std::size_t n, std::uint64_t seed, const GroupSpec& groups = {}, int max_cost = 1);
/// Random tree plus chords up to m edges; costs uniform in [1, max_cost].
Instance gen_random_connected(std::size_t n, std::size_t m, std::uint64_t seed, const GroupSpec& groups = {},
                              int max_cost = 1);

struct SpGenerated {
    SpInstance sp;
    Instance instance;  // same graph, groups drawn from block terminals
    std::string expression;
};

/// Alternating S/P composition of depth exactly m with unit edges. The level
/// just above the leaves is series (path_len children); parallel levels have
/// `fanout` children. Child 0 always carries the full remaining depth; other
/// parallel children have height >= 1.
SpGenerated gen_sp_depth(int m, std::size_t fanout, std::size_t path_len, std::uint64_t seed,
                         std::size_t group_count = 1);

/// Mixed small instances (m <= 16, n <= 7) with integer costs in [1, 5],
/// used wherever a brute-force reference is needed.
std::vector<Instance> oracle_suite(std::size_t count, std::uint64_t seed);

enum class GenFamily { setcover_star, short_cycles, bounded_fes, sp_depth, random_tree, random_connected };

struct GenSpec {
    GenFamily family = GenFamily::random_connected;
    std::uint64_t seed = 0;
    std::size_t n = 6;
    std::size_t m = 8;
    std::size_t k = 1;
    std::size_t num_sets = 3;
    std::vector<std::vector<std::size_t>> memberships;
    std::size_t num_cycles = 2;
    std::size_t cycle_len = 3;
    int depth = 2;
    std::size_t fanout = 2;
    std::size_t path_len = 2;
    int max_cost = 1;
    GroupSpec groups;
};

struct Generated {
    Instance instance;
    std::optional<SpGenerated> sp;
};

GenFamily parse_family(std::string_view name);
std::string family_name(GenFamily family);

/// Parses a JSON object {"family": ..., <params>}; unknown keys are errors.
GenSpec parse_gen_spec(std::string_view json);
Generated generate(const GenSpec& spec);

}  // namespace reqcut
