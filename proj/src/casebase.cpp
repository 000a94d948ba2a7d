#include "casebase.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <stdexcept>

#include <json.hpp>

namespace aacbr {

std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, end);
}

std::string Vocabulary::predicate_name(int i) const {
    const Predicate& p = predicates[static_cast<size_t>(i)];
    const std::string fname = p.feature < static_cast<int>(feature_names.size())
                                  ? feature_names[static_cast<size_t>(p.feature)]
                                  : "f" + std::to_string(p.feature);
    return fname + "_<=_" + format_double(p.threshold);
}

const char* strategy_name(Strategy s) {
    switch (s) {
        case Strategy::Keep: return "keep";
        case Strategy::Removal: return "removal";
        case Strategy::Majority: return "majority";
    }
    return "?";
}

Strategy strategy_from_name(const std::string& name) {
    if (name == "keep") return Strategy::Keep;
    if (name == "removal") return Strategy::Removal;
    if (name == "majority") return Strategy::Majority;
    throw std::invalid_argument("unknown strategy: " + name);
}

static void check_same_universe(const PredicateSet& a, const PredicateSet& b) {
    if (a.universe_size() != b.universe_size())
        throw std::invalid_argument("characterisations from different vocabularies");
}

bool more_specific_eq(const PredicateSet& a, const PredicateSet& b) {
    check_same_universe(a, b);
    return b.is_subset_of(a);
}

bool irrelevant(const PredicateSet& new_chars, const PredicateSet& past_chars) {
    check_same_universe(new_chars, past_chars);
    return !past_chars.is_subset_of(new_chars);
}

std::vector<std::pair<int, int>> coherence_violations(const Casebase& cb) {
    std::vector<std::pair<int, int>> out;
    const int n = static_cast<int>(cb.cases.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (cb.cases[static_cast<size_t>(i)].chars == cb.cases[static_cast<size_t>(j)].chars &&
                cb.cases[static_cast<size_t>(i)].outcome != cb.cases[static_cast<size_t>(j)].outcome)
                out.emplace_back(i, j);
    return out;
}

namespace {

struct CharGroup {
    PredicateSet chars;
    std::array<std::vector<int>, 2> provenance;  // per label

    bool incoherent() const { return !provenance[0].empty() && !provenance[1].empty(); }
};

// Groups cases by characterisation in deterministic order.
std::vector<CharGroup> group_by_chars(const Casebase& cb) {
    std::vector<CharGroup> groups;
    for (const Case& c : cb.cases) {
        auto it = std::find_if(groups.begin(), groups.end(),
                               [&](const CharGroup& g) { return g.chars == c.chars; });
        if (it == groups.end()) {
            groups.push_back(CharGroup{c.chars, {}});
            it = std::prev(groups.end());
        }
        auto& prov = it->provenance[c.outcome];
        prov.insert(prov.end(), c.provenance.begin(), c.provenance.end());
    }
    std::sort(groups.begin(), groups.end(),
              [](const CharGroup& a, const CharGroup& b) { return a.chars.before(b.chars); });
    return groups;
}

}  // namespace

Casebase apply_strategy(const Casebase& cb, Strategy strategy) {
    Casebase out;
    out.vocab = cb.vocab;
    out.default_label = cb.default_label;
    out.label_names = cb.label_names;

    for (CharGroup& g : group_by_chars(cb)) {
        for (auto& prov : g.provenance) std::sort(prov.begin(), prov.end());
        switch (strategy) {
            case Strategy::Keep:
                for (Label l : {Label{0}, Label{1}})
                    if (!g.provenance[l].empty())
                        out.cases.push_back(Case{g.chars, l, g.provenance[l]});
                break;
            case Strategy::Removal:
                if (!g.incoherent())
                    for (Label l : {Label{0}, Label{1}})
                        if (!g.provenance[l].empty())
                            out.cases.push_back(Case{g.chars, l, g.provenance[l]});
                break;
            case Strategy::Majority: {
                const size_t n0 = g.provenance[0].size(), n1 = g.provenance[1].size();
                Label winner;
                if (n0 != n1) winner = n0 > n1 ? Label{0} : Label{1};
                else winner = cb.default_label;  // tie
                std::vector<int> prov = g.provenance[0];
                prov.insert(prov.end(), g.provenance[1].begin(), g.provenance[1].end());
                std::sort(prov.begin(), prov.end());
                out.cases.push_back(Case{g.chars, winner, std::move(prov)});
                break;
            }
        }
    }
    return out;
}

std::string casebase_to_json(const Casebase& cb) {
    nlohmann::ordered_json doc;
    doc["labels"] = cb.label_names;
    doc["default_outcome"] = cb.label_names[cb.default_label];
    doc["vocabulary"] = nlohmann::ordered_json::array();
    for (int i = 0; i < cb.vocab.size(); ++i) {
        const Predicate& p = cb.vocab.predicates[static_cast<size_t>(i)];
        doc["vocabulary"].push_back({{"feature", cb.vocab.feature_names[static_cast<size_t>(p.feature)]},
                                     {"threshold", p.threshold}});
    }
    doc["cases"] = nlohmann::ordered_json::array();
    for (const Case& c : cb.cases) {
        nlohmann::ordered_json jc;
        jc["predicates"] = nlohmann::ordered_json::array();
        for (int i : c.chars.members()) jc["predicates"].push_back(cb.vocab.predicate_name(i));
        jc["outcome"] = cb.label_names[c.outcome];
        jc["provenance"] = c.provenance;
        doc["cases"].push_back(std::move(jc));
    }
    return doc.dump(2);
}

}  // namespace aacbr
