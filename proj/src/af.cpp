#include "af.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace aacbr::af {

Framework make_framework(int n_arguments, std::vector<std::pair<ArgId, ArgId>> attacks) {
    if (n_arguments < 0) throw std::invalid_argument("negative argument count");
    std::sort(attacks.begin(), attacks.end());
    attacks.erase(std::unique(attacks.begin(), attacks.end()), attacks.end());

    Framework fw;
    fw.n = n_arguments;
    fw.attackers.resize(static_cast<size_t>(n_arguments));
    fw.targets.resize(static_cast<size_t>(n_arguments));
    for (const auto& [from, to] : attacks) {
        if (from < 0 || from >= n_arguments || to < 0 || to >= n_arguments)
            throw std::invalid_argument("attack endpoint outside argument set");
        fw.attackers[static_cast<size_t>(to)].push_back(from);
        fw.targets[static_cast<size_t>(from)].push_back(to);
    }
    fw.attacks = std::move(attacks);
    return fw;
}

Grounded grounded(const Framework& fw) {
    const size_t n = static_cast<size_t>(fw.n);
    Grounded g;
    g.rank.assign(n, -1);
    g.in.assign(n, 0);

    // Layered fixpoint: an argument is accepted once all of its attackers are
    // defeated by already-accepted arguments. Layer index = rank.
    std::vector<int> undefeated(n);
    std::vector<char> defeated(n, 0);
    std::vector<ArgId> layer;
    for (ArgId a = 0; a < fw.n; ++a) {
        undefeated[static_cast<size_t>(a)] = static_cast<int>(fw.attackers[static_cast<size_t>(a)].size());
        if (undefeated[static_cast<size_t>(a)] == 0) layer.push_back(a);
    }

    int rank = 0;
    while (!layer.empty()) {
        std::vector<ArgId> next;
        for (ArgId a : layer) {
            g.in[static_cast<size_t>(a)] = 1;
            g.rank[static_cast<size_t>(a)] = rank;
            g.extension.push_back(a);
        }
        for (ArgId a : layer) {
            for (ArgId t : fw.targets[static_cast<size_t>(a)]) {
                if (defeated[static_cast<size_t>(t)]) continue;
                defeated[static_cast<size_t>(t)] = 1;
                for (ArgId u : fw.targets[static_cast<size_t>(t)]) {
                    if (--undefeated[static_cast<size_t>(u)] == 0 && !g.in[static_cast<size_t>(u)])
                        next.push_back(u);
                }
            }
        }
        // An argument may reach zero twice if pushed before acceptance; guard above.
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        layer = std::move(next);
        ++rank;
    }
    std::sort(g.extension.begin(), g.extension.end());
    return g;
}

bool defends(const Framework& fw, const std::vector<ArgId>& defenders, ArgId target) {
    if (target < 0 || target >= fw.n) throw std::invalid_argument("defends: unknown target argument");
    std::vector<char> is_defender(static_cast<size_t>(fw.n), 0);
    for (ArgId d : defenders) {
        if (d < 0 || d >= fw.n) throw std::invalid_argument("defends: unknown defender argument");
        is_defender[static_cast<size_t>(d)] = 1;
    }
    for (ArgId attacker : fw.attackers[static_cast<size_t>(target)]) {
        bool countered = false;
        for (ArgId d : fw.attackers[static_cast<size_t>(attacker)]) {
            if (is_defender[static_cast<size_t>(d)]) { countered = true; break; }
        }
        if (!countered) return false;
    }
    return true;
}

const std::vector<ArgId>& attackers_of(const Framework& fw, ArgId arg) {
    if (arg < 0 || arg >= fw.n) throw std::invalid_argument("attackers_of: unknown argument");
    return fw.attackers[static_cast<size_t>(arg)];
}

static std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

std::string to_dot(const Framework& fw, const std::vector<std::string>& labels,
                   const std::string& graph_name) {
    std::ostringstream os;
    os << "digraph " << graph_name << " {\n";
    for (ArgId a = 0; a < fw.n; ++a) {
        const std::string label =
            a < static_cast<ArgId>(labels.size()) ? labels[static_cast<size_t>(a)] : std::to_string(a);
        os << "  n" << a << " [label=\"" << dot_escape(label) << "\"];\n";
    }
    for (const auto& [from, to] : fw.attacks)
        os << "  n" << from << " -> n" << to << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace aacbr::af
