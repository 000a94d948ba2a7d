#include "engine.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

namespace aacbr {

const char* variant_name(Variant v) {
    return v == Variant::Regular ? "regular" : "cumulative";
}

Variant variant_from_name(const std::string& name) {
    if (name == "regular") return Variant::Regular;
    if (name == "cumulative") return Variant::Cumulative;
    throw std::invalid_argument("unknown variant: " + name);
}

MinedAf mine_af(const Casebase& cb) {
    MinedAf mined;
    mined.arg_case.push_back(-1);  // default argument
    const PredicateSet empty_chars(cb.vocab.size());
    for (size_t i = 0; i < cb.cases.size(); ++i) {
        const Case& c = cb.cases[i];
        if (c.chars.universe_size() != cb.vocab.size())
            throw std::invalid_argument("mine_af: case characterisation outside the vocabulary");
        if (c.chars.empty() && c.outcome == cb.default_label) continue;  // duplicates the default
        mined.arg_case.push_back(static_cast<int>(i));
    }

    const int n_args = static_cast<int>(mined.arg_case.size());
    auto chars_of = [&](int arg) -> const PredicateSet& {
        const int ci = mined.arg_case[static_cast<size_t>(arg)];
        return ci < 0 ? empty_chars : cb.cases[static_cast<size_t>(ci)].chars;
    };
    auto outcome_of = [&](int arg) -> Label {
        const int ci = mined.arg_case[static_cast<size_t>(arg)];
        return ci < 0 ? cb.default_label : cb.cases[static_cast<size_t>(ci)].outcome;
    };

    std::vector<std::pair<int, int>> attacks;
    std::vector<int> strict;  // candidate attackers strictly more specific than the target
    for (int target = 0; target < n_args; ++target) {
        const PredicateSet& tc = chars_of(target);
        const Label to = outcome_of(target);
        strict.clear();
        for (int a = 1; a < n_args; ++a) {  // the default argument never attacks
            if (a == target || outcome_of(a) == to) continue;
            const PredicateSet& ac = chars_of(a);
            if (!tc.is_subset_of(ac)) continue;
            if (ac == tc)
                attacks.emplace_back(a, target);  // incoherent pair: nothing fits strictly between
            else
                strict.push_back(a);
        }
        // Condition (c): only the minimal strictly-more-specific disagreeing
        // cases attack; anything above a minimal one is blocked by it.
        std::sort(strict.begin(), strict.end(),
                  [&](int x, int y) { return chars_of(x).before(chars_of(y)); });
        std::vector<int> minimals;
        for (int a : strict) {
            bool blocked = false;
            for (int m : minimals)
                if (chars_of(m).is_proper_subset_of(chars_of(a))) { blocked = true; break; }
            if (!blocked) {
                minimals.push_back(a);
                attacks.emplace_back(a, target);
            }
        }
    }
    mined.framework = af::make_framework(n_args, std::move(attacks));
    return mined;
}

af::Framework add_new_case(const MinedAf& af_d, const Casebase& cb, const PredicateSet& new_chars) {
    if (new_chars.universe_size() != cb.vocab.size())
        throw std::invalid_argument("add_new_case: characterisation outside the vocabulary");
    const int new_arg = af_d.framework.n;
    std::vector<std::pair<int, int>> attacks = af_d.framework.attacks;
    for (int a = 1; a < af_d.framework.n; ++a) {
        const Case& c = cb.cases[static_cast<size_t>(af_d.arg_case[static_cast<size_t>(a)])];
        if (irrelevant(new_chars, c.chars)) attacks.emplace_back(new_arg, a);
    }
    return af::make_framework(new_arg + 1, std::move(attacks));
}

Prediction predict(const Model& model, const std::vector<double>& row) {
    Prediction p;
    p.chars = binarise(row, model.casebase.vocab);
    p.af_dn = add_new_case(model.af_d, model.casebase, p.chars);
    p.new_arg = model.af_d.framework.n;
    p.grounded = af::grounded(p.af_dn);
    p.outcome = p.grounded.contains(model.af_d.default_arg())
                    ? model.casebase.default_label
                    : static_cast<Label>(1 - model.casebase.default_label);
    return p;
}

namespace {

Label resolve_default_label(const std::vector<Label>& labels, int requested) {
    if (requested == 0 || requested == 1) return static_cast<Label>(requested);
    std::array<std::int64_t, 2> counts{0, 0};
    for (Label l : labels) ++counts[l];
    return counts[0] >= counts[1] ? Label{0} : Label{1};
}

Casebase build_casebase(const std::vector<std::vector<double>>& rows,
                        const std::vector<Label>& labels, const Tree& tree,
                        const std::vector<std::string>& feature_names, Label default_label,
                        const std::array<std::string, 2>& label_names, Strategy strategy) {
    return apply_strategy(
        binarise_dataset(rows, labels, tree, feature_names, default_label, label_names), strategy);
}

Model fit_common(const std::vector<std::vector<double>>& rows, const std::vector<Label>& labels,
                 const std::vector<std::string>& feature_names,
                 const std::array<std::string, 2>& label_names, const FitOptions& options,
                 Variant variant) {
    if (rows.empty()) throw std::invalid_argument("fit: empty dataset");
    Model model;
    model.variant = variant;
    model.strategy = options.strategy;
    model.params = options.params;
    model.seed = options.seed;
    model.feature_names = feature_names;
    const Label default_label = resolve_default_label(labels, options.default_label);
    model.tree = grow(rows, labels, options.params, default_label);
    model.casebase = build_casebase(rows, labels, model.tree, feature_names, default_label,
                                    label_names, options.strategy);
    return model;
}

}  // namespace

Model fit_regular(const std::vector<std::vector<double>>& rows, const std::vector<Label>& labels,
                  const std::vector<std::string>& feature_names,
                  const std::array<std::string, 2>& label_names, const FitOptions& options) {
    Model model = fit_common(rows, labels, feature_names, label_names, options, Variant::Regular);
    model.af_d = mine_af(model.casebase);
    return model;
}

Model fit_cumulative(const std::vector<std::vector<double>>& rows, const std::vector<Label>& labels,
                     const std::vector<std::string>& feature_names,
                     const std::array<std::string, 2>& label_names, const FitOptions& options) {
    Model model = fit_common(rows, labels, feature_names, label_names, options, Variant::Cumulative);
    const Casebase full = std::move(model.casebase);

    // Processing order: general to specific (ascending cardinality), ties by
    // the deterministic characterisation order, then outcome.
    std::vector<int> order(full.cases.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        const Case& a = full.cases[static_cast<size_t>(x)];
        const Case& b = full.cases[static_cast<size_t>(y)];
        if (a.chars != b.chars) return a.chars.before(b.chars);
        return a.outcome < b.outcome;
    });

    Casebase retained = full;
    retained.cases.clear();
    MinedAf mined = mine_af(retained);
    for (int idx : order) {
        const Case& c = full.cases[static_cast<size_t>(idx)];
        const af::Framework af_dn = add_new_case(mined, retained, c.chars);
        const af::Grounded g = af::grounded(af_dn);
        const Label predicted =
            g.contains(0) ? retained.default_label : static_cast<Label>(1 - retained.default_label);
        if (predicted != c.outcome) {
            retained.cases.push_back(c);
            mined = mine_af(retained);
        }
    }
    model.casebase = std::move(retained);
    model.af_d = std::move(mined);
    return model;
}

af::Framework remove_spikes(const af::Framework& fw, int default_arg, std::vector<int>* kept_out) {
    if (default_arg < 0 || default_arg >= fw.n)
        throw std::invalid_argument("remove_spikes: unknown default argument");
    std::vector<char> reach(static_cast<size_t>(fw.n), 0);
    std::vector<int> stack{default_arg};
    reach[static_cast<size_t>(default_arg)] = 1;
    while (!stack.empty()) {
        const int a = stack.back();
        stack.pop_back();
        for (int attacker : fw.attackers[static_cast<size_t>(a)]) {
            if (!reach[static_cast<size_t>(attacker)]) {
                reach[static_cast<size_t>(attacker)] = 1;
                stack.push_back(attacker);
            }
        }
    }
    std::vector<int> kept;
    std::vector<int> remap(static_cast<size_t>(fw.n), -1);
    for (int a = 0; a < fw.n; ++a) {
        if (reach[static_cast<size_t>(a)]) {
            remap[static_cast<size_t>(a)] = static_cast<int>(kept.size());
            kept.push_back(a);
        }
    }
    std::vector<std::pair<int, int>> attacks;
    for (const auto& [from, to] : fw.attacks)
        if (reach[static_cast<size_t>(from)] && reach[static_cast<size_t>(to)])
            attacks.emplace_back(remap[static_cast<size_t>(from)], remap[static_cast<size_t>(to)]);
    if (kept_out) *kept_out = kept;
    return af::make_framework(static_cast<int>(kept.size()), std::move(attacks));
}

int model_size(const Model& model) {
    return remove_spikes(model.af_d.framework, model.af_d.default_arg()).n;
}

std::string argument_label(const Casebase& cb, const PredicateSet& chars, const std::string& outcome) {
    std::string out = "{";
    bool first = true;
    for (int i : chars.members()) {
        if (!first) out += ", ";
        out += cb.vocab.predicate_name(i);
        first = false;
    }
    out += "}: " + outcome;
    return out;
}

std::vector<std::string> argument_labels(const Model& model) {
    std::vector<std::string> labels;
    for (int a = 0; a < model.af_d.framework.n; ++a) {
        const int ci = model.af_d.arg_case[static_cast<size_t>(a)];
        if (ci < 0) {
            labels.push_back("default " +
                             argument_label(model.casebase, PredicateSet(model.casebase.vocab.size()),
                                            model.casebase.label_names[model.casebase.default_label]));
        } else {
            const Case& c = model.casebase.cases[static_cast<size_t>(ci)];
            labels.push_back(
                argument_label(model.casebase, c.chars, model.casebase.label_names[c.outcome]));
        }
    }
    return labels;
}

namespace {

nlohmann::ordered_json tree_to_json(const Tree& tree) {
    nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
    for (const TreeNode& n : tree.nodes) {
        nlohmann::ordered_json jn;
        if (n.is_leaf()) {
            jn["label"] = static_cast<int>(n.label);
        } else {
            jn["feature"] = n.feature;
            jn["threshold"] = n.threshold;
            jn["left"] = n.left;
            jn["right"] = n.right;
        }
        jn["counts"] = {n.class_counts[0], n.class_counts[1]};
        nodes.push_back(std::move(jn));
    }
    return nodes;
}

Tree tree_from_json(const nlohmann::json& nodes, int n_features, Label default_label) {
    Tree tree;
    tree.n_features = n_features;
    tree.default_label = default_label;
    for (const auto& jn : nodes) {
        TreeNode n;
        if (jn.contains("feature")) {
            n.feature = jn.at("feature").get<int>();
            n.threshold = jn.at("threshold").get<double>();
            n.left = jn.at("left").get<int>();
            n.right = jn.at("right").get<int>();
        } else {
            n.label = static_cast<Label>(jn.at("label").get<int>());
        }
        n.class_counts[0] = jn.at("counts")[0].get<std::int64_t>();
        n.class_counts[1] = jn.at("counts")[1].get<std::int64_t>();
        tree.nodes.push_back(n);
    }
    return tree;
}

}  // namespace

std::string model_to_json(const Model& model) {
    const Casebase& cb = model.casebase;
    nlohmann::ordered_json doc;
    doc["format"] = "aacbr-model";
    doc["variant"] = variant_name(model.variant);
    doc["strategy"] = strategy_name(model.strategy);
    doc["params"] = {{"max_depth", model.params.max_depth},
                     {"max_leaf_nodes", model.params.max_leaf_nodes}};
    doc["seed"] = model.seed;
    doc["labels"] = cb.label_names;
    doc["default_outcome"] = cb.label_names[cb.default_label];
    doc["feature_names"] = model.feature_names;
    doc["tree"] = tree_to_json(model.tree);
    doc["vocabulary"] = nlohmann::ordered_json::array();
    for (const Predicate& p : cb.vocab.predicates)
        doc["vocabulary"].push_back({{"feature", p.feature}, {"threshold", p.threshold}});
    doc["cases"] = nlohmann::ordered_json::array();
    for (const Case& c : cb.cases) {
        nlohmann::ordered_json jc;
        jc["predicates"] = c.chars.members();
        jc["outcome"] = static_cast<int>(c.outcome);
        jc["provenance"] = c.provenance;
        doc["cases"].push_back(std::move(jc));
    }
    return doc.dump(2);
}

Model model_from_json(const std::string& text) {
    const nlohmann::json doc = nlohmann::json::parse(text);
    if (!doc.contains("format") || doc.at("format") != "aacbr-model")
        throw std::invalid_argument("not an aacbr model document");
    Model model;
    model.variant = variant_from_name(doc.at("variant").get<std::string>());
    model.strategy = strategy_from_name(doc.at("strategy").get<std::string>());
    model.params.max_depth = doc.at("params").at("max_depth").get<int>();
    model.params.max_leaf_nodes = doc.at("params").at("max_leaf_nodes").get<int>();
    model.seed = doc.at("seed").get<std::uint64_t>();
    model.feature_names = doc.at("feature_names").get<std::vector<std::string>>();

    Casebase& cb = model.casebase;
    cb.label_names[0] = doc.at("labels")[0].get<std::string>();
    cb.label_names[1] = doc.at("labels")[1].get<std::string>();
    const std::string def = doc.at("default_outcome").get<std::string>();
    cb.default_label = def == cb.label_names[0] ? Label{0} : Label{1};
    cb.vocab.feature_names = model.feature_names;
    for (const auto& jp : doc.at("vocabulary"))
        cb.vocab.predicates.push_back(
            Predicate{jp.at("feature").get<int>(), jp.at("threshold").get<double>()});
    for (const auto& jc : doc.at("cases")) {
        Case c;
        c.chars = PredicateSet(cb.vocab.size());
        for (int i : jc.at("predicates").get<std::vector<int>>()) c.chars.set(i);
        c.outcome = static_cast<Label>(jc.at("outcome").get<int>());
        c.provenance = jc.at("provenance").get<std::vector<int>>();
        cb.cases.push_back(std::move(c));
    }
    model.tree = tree_from_json(doc.at("tree"), static_cast<int>(model.feature_names.size()),
                                cb.default_label);
    model.af_d = mine_af(cb);
    return model;
}

}  // namespace aacbr
