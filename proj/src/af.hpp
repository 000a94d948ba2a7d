#pragma once

#include <string>
#include <utility>
#include <vector>

namespace aacbr::af {

/// Argument ids are dense indices [0, n) within one framework.
using ArgId = int;

/// A finite abstract argumentation framework: arguments plus a directed
/// attack relation. Immutable after construction via make().
struct Framework {
    int n = 0;
    std::vector<std::pair<ArgId, ArgId>> attacks;  // sorted, duplicate-free
    std::vector<std::vector<ArgId>> attackers;     // attackers[a]: who attacks a
    std::vector<std::vector<ArgId>> targets;       // targets[a]: whom a attacks
};

/// Builds a framework from an argument count and attack pairs.
/// Deduplicates attacks; throws if an endpoint is out of range.
Framework make_framework(int n_arguments, std::vector<std::pair<ArgId, ArgId>> attacks);

/// Grounded extension with per-member ranks: rank[a] is the least i such
/// that a is in G_i; -1 for non-members.
struct Grounded {
    std::vector<ArgId> extension;  // sorted
    std::vector<int> rank;
    std::vector<char> in;          // membership flags, size n

    bool contains(ArgId a) const { return in[static_cast<size_t>(a)] != 0; }
};

/// Least fixpoint of iterated defence starting from unattacked arguments.
/// Terminates on any finite framework, including cyclic ones.
Grounded grounded(const Framework& framework);

/// True iff every attacker of `target` is attacked by some member of
/// `defenders`. Throws on an out-of-range target.
bool defends(const Framework& framework, const std::vector<ArgId>& defenders, ArgId target);

/// Incoming attackers of `arg`. Throws on an out-of-range argument.
const std::vector<ArgId>& attackers_of(const Framework& framework, ArgId arg);

/// DOT rendering: one node per argument with the caller-supplied label,
/// one edge per attack, both in deterministic order.
std::string to_dot(const Framework& framework, const std::vector<std::string>& labels,
                   const std::string& graph_name = "af");

}  // namespace aacbr::af
