#include "isys/formats.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <json.hpp>

#include "isys/error.hpp"

namespace isys {

using nlohmann::json;

namespace {

json parse_json(std::string_view text) {
    if (std::all_of(text.begin(), text.end(), [](char c) { return c == ' ' || c == '\n' || c == '\t' || c == '\r'; }))
        throw FormatError("line 1, column 1", "syntax error: empty document");
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, column = 1;
        const std::size_t limit = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < limit; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw FormatError("line " + std::to_string(line) + ", column " + std::to_string(column),
                          std::string("syntax error: ") + e.what());
    }
}

std::string child(const std::string& path, std::string_view key) { return path + "/" + std::string(key); }
std::string child(const std::string& path, std::size_t index) { return path + "/" + std::to_string(index); }

void expect_object(const json& j, const std::string& path, std::initializer_list<std::string_view> required,
                   std::initializer_list<std::string_view> optional = {}) {
    if (!j.is_object()) throw FormatError(path.empty() ? "/" : path, "expected an object");
    for (const auto& [key, value] : j.items()) {
        bool known = std::find(required.begin(), required.end(), key) != required.end() ||
                     std::find(optional.begin(), optional.end(), key) != optional.end();
        if (!known) throw FormatError(child(path, key), "unknown field '" + key + "'");
    }
    for (auto key : required)
        if (!j.contains(std::string(key)))
            throw FormatError(path.empty() ? "/" : path, "missing field '" + std::string(key) + "'");
}

std::string get_string(const json& j, std::string_view key, const std::string& path) {
    const auto& v = j.at(std::string(key));
    if (!v.is_string()) throw FormatError(child(path, key), "expected a string");
    return v.get<std::string>();
}

const json& get_array(const json& j, std::string_view key, const std::string& path) {
    const auto& v = j.at(std::string(key));
    if (!v.is_array()) throw FormatError(child(path, key), "expected an array");
    return v;
}

std::vector<std::string> get_strings(const json& j, std::string_view key, const std::string& path) {
    const auto& arr = get_array(j, key, path);
    std::vector<std::string> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (!arr[i].is_string()) throw FormatError(child(child(path, key), i), "expected a string");
        out.push_back(arr[i].get<std::string>());
    }
    return out;
}

void expect_version(const json& j, std::string_view version) {
    auto v = get_string(j, "version", "");
    if (v != version)
        throw FormatError("/version", "unsupported version '" + v + "', expected '" + std::string(version) + "'");
}

PortId parse_port_ref(const std::string& ref, const std::string& path) {
    auto dot = ref.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == ref.size() || ref.find('.', dot + 1) != std::string::npos)
        throw FormatError(path, "port reference '" + ref + "' is not of the form component.port");
    return PortId{ref.substr(0, dot), ref.substr(dot + 1)};
}

}  // namespace

InteractionSystem parse_system_unchecked(std::string_view text) {
    const json doc = parse_json(text);
    expect_object(doc, "", {"version", "components", "interactions"});
    expect_version(doc, kSystemVersion);

    InteractionSystem sys;
    const auto& comps = get_array(doc, "components", "");
    for (std::size_t i = 0; i < comps.size(); ++i) {
        const auto path = child("/components", i);
        const auto& c = comps[i];
        expect_object(c, path, {"name", "ports", "states", "initial", "transitions"});
        Component comp{get_string(c, "name", path), get_strings(c, "ports", path)};
        LocalBehavior b;
        b.states = get_strings(c, "states", path);
        b.initial = get_string(c, "initial", path);
        b.ports = comp.ports;
        const auto& ts = get_array(c, "transitions", path);
        for (std::size_t k = 0; k < ts.size(); ++k) {
            const auto tpath = child(child(path, "transitions"), k);
            const auto& t = ts[k];
            if (!t.is_array() || t.size() != 3 || !t[0].is_string() || !t[1].is_string() || !t[2].is_string())
                throw FormatError(tpath, "expected [from, port, to]");
            LocalTransition tr{t[0].get<std::string>(), t[1].get<std::string>(), t[2].get<std::string>()};
            if (std::find(b.transitions.begin(), b.transitions.end(), tr) != b.transitions.end())
                throw FormatError(tpath, "duplicate transition");
            b.transitions.push_back(std::move(tr));
        }
        sys.model.components.push_back(std::move(comp));
        sys.behaviors.push_back(std::move(b));
    }

    const auto& ints = get_array(doc, "interactions", "");
    for (std::size_t k = 0; k < ints.size(); ++k) {
        const auto path = child("/interactions", k);
        const auto& a = ints[k];
        expect_object(a, path, {"ports"}, {"name"});
        Interaction alpha;
        alpha.name = a.contains("name") ? get_string(a, "name", path) : "alpha_" + std::to_string(k + 1);
        const auto refs = get_strings(a, "ports", path);
        for (std::size_t r = 0; r < refs.size(); ++r)
            alpha.ports.push_back(parse_port_ref(refs[r], child(child(path, "ports"), r)));
        sys.model.interactions.push_back(std::move(alpha));
    }
    return sys;
}

InteractionSystem parse_system(std::string_view text) {
    auto sys = parse_system_unchecked(text);

    std::map<std::set<PortId>, std::size_t> first;
    for (std::size_t k = 0; k < sys.model.interactions.size(); ++k) {
        const auto& ports = sys.model.interactions[k].ports;
        auto [it, fresh] = first.emplace(std::set<PortId>(ports.begin(), ports.end()), k);
        if (!fresh)
            throw FormatError(child("/interactions", k),
                              "duplicate interaction: '" + sys.model.interactions[k].name + "' (/interactions/" +
                                  std::to_string(it->second) + ") and '" + sys.model.interactions[k].name +
                                  "' have the same ports as '" + sys.model.interactions[it->second].name + "'");
    }

    auto report = validate_system(sys);
    if (!report.ok()) throw FormatError("/", "invalid system: " + report.summary());
    return sys;
}

std::string serialize_system(const InteractionSystem& sys) {
    const auto canon = canonicalize(sys);
    json doc = json::object();
    doc["version"] = kSystemVersion;
    json comps = json::array();
    for (std::size_t i = 0; i < canon.model.components.size(); ++i) {
        const auto& c = canon.model.components[i];
        json jc = json::object();
        jc["name"] = c.name;
        jc["ports"] = c.ports;
        json transitions = json::array();
        if (i < canon.behaviors.size()) {
            const auto& b = canon.behaviors[i];
            jc["states"] = b.states;
            jc["initial"] = b.initial;
            for (const auto& t : b.transitions) transitions.push_back(json::array({t.from, t.port, t.to}));
        } else {
            jc["states"] = json::array();
            jc["initial"] = "";
        }
        jc["transitions"] = std::move(transitions);
        comps.push_back(std::move(jc));
    }
    doc["components"] = std::move(comps);
    json ints = json::array();
    for (const auto& alpha : canon.model.interactions) {
        json refs = json::array();
        for (const auto& p : alpha.ports) refs.push_back(p.str());
        ints.push_back(json{{"name", alpha.name}, {"ports", std::move(refs)}});
    }
    doc["interactions"] = std::move(ints);
    return doc.dump(2) + "\n";
}

Dtm parse_dtm(std::string_view text) {
    const json doc = parse_json(text);
    expect_object(doc, "", {"version", "tape_alphabet", "input_alphabet", "blank", "states", "initial", "accept",
                            "reject", "delta"});
    expect_version(doc, kDtmVersion);
    Dtm m;
    m.tape_alphabet = get_strings(doc, "tape_alphabet", "");
    m.input_alphabet = get_strings(doc, "input_alphabet", "");
    m.blank = get_string(doc, "blank", "");
    m.states = get_strings(doc, "states", "");
    m.initial = get_string(doc, "initial", "");
    m.accept = get_string(doc, "accept", "");
    m.reject = get_string(doc, "reject", "");
    const auto& rows = get_array(doc, "delta", "");
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const auto path = child("/delta", k);
        const auto& r = rows[k];
        expect_object(r, path, {"state", "read", "next", "write", "move"});
        const auto& mv = r.at("move");
        if (!mv.is_number_integer() || (mv.get<long long>() != -1 && mv.get<long long>() != 1))
            throw FormatError(child(path, "move"), "move must be -1 or +1");
        DeltaEntry e{get_string(r, "next", path), get_string(r, "write", path),
                     mv.get<long long>() < 0 ? Move::Left : Move::Right};
        auto key = std::make_pair(get_string(r, "state", path), get_string(r, "read", path));
        if (!m.delta.emplace(key, std::move(e)).second)
            throw FormatError(path, "duplicate delta row for (" + key.first + ", " + key.second + ")");
    }
    auto report = validate_dtm(m);
    if (!report.ok()) throw FormatError("/", "invalid machine: " + report.summary());
    return m;
}

std::string serialize_dtm(const Dtm& m) {
    json doc = json::object();
    doc["version"] = kDtmVersion;
    doc["tape_alphabet"] = m.tape_alphabet;
    doc["input_alphabet"] = m.input_alphabet;
    doc["blank"] = m.blank;
    doc["states"] = m.states;
    doc["initial"] = m.initial;
    doc["accept"] = m.accept;
    doc["reject"] = m.reject;
    json rows = json::array();
    for (const auto& [key, e] : m.delta)
        rows.push_back(json{{"state", key.first},
                            {"read", key.second},
                            {"next", e.next},
                            {"write", e.write},
                            {"move", static_cast<int>(e.move)}});
    doc["delta"] = std::move(rows);
    return doc.dump(2) + "\n";
}

namespace {

void constrain(const InteractionSystem& sys, StatePredicate& p, const std::string& component, const std::string& state,
               const std::string& where) {
    auto c = sys.model.component_index(component);
    if (!c) throw FormatError(where, "unknown component '" + component + "'");
    if (state == "*") {
        p.constraints[*c].reset();
        return;
    }
    if (!sys.behaviors[*c].state_index(state))
        throw FormatError(where, "component '" + component + "' has no state '" + state + "'");
    p.constraints[*c] = state;
}

}  // namespace

StatePredicate parse_inline_predicate(const InteractionSystem& sys, std::string_view text) {
    StatePredicate p{std::vector<std::optional<std::string>>(sys.component_count())};
    std::vector<std::pair<std::string, std::string>> pairs;
    std::size_t start = 0;
    while (start <= text.size() && !text.empty()) {
        auto end = text.find(',', start);
        if (end == std::string_view::npos) end = text.size();
        std::string segment(text.substr(start, end - start));
        auto eq = segment.find('=');
        if (eq != std::string::npos) {
            pairs.emplace_back(segment.substr(0, eq), segment.substr(eq + 1));
        } else if (!pairs.empty()) {
            pairs.back().second += "," + segment;
        } else {
            throw FormatError("predicate", "expected component=state, got '" + segment + "'");
        }
        start = end + 1;
    }
    for (const auto& [component, state] : pairs) constrain(sys, p, component, state, "predicate");
    return p;
}

std::vector<StatePredicate> parse_predicate_document(const InteractionSystem& sys, std::string_view text) {
    const json doc = parse_json(text);
    expect_object(doc, "", {"version", "any_of"});
    expect_version(doc, kPredicateVersion);
    const auto& alts = get_array(doc, "any_of", "");
    std::vector<StatePredicate> out;
    for (std::size_t k = 0; k < alts.size(); ++k) {
        const auto path = child("/any_of", k);
        if (!alts[k].is_object()) throw FormatError(path, "expected an object");
        StatePredicate p{std::vector<std::optional<std::string>>(sys.component_count())};
        for (const auto& [component, state] : alts[k].items()) {
            if (!state.is_string()) throw FormatError(child(path, component), "expected a string");
            constrain(sys, p, component, state.get<std::string>(), child(path, component));
        }
        out.push_back(std::move(p));
    }
    return out;
}

std::string format_predicate(const InteractionSystem& sys, const StatePredicate& p) {
    std::string out;
    for (std::size_t c = 0; c < p.constraints.size() && c < sys.component_count(); ++c) {
        if (!p.constraints[c]) continue;
        if (!out.empty()) out += ",";
        out += sys.model.components[c].name + "=" + *p.constraints[c];
    }
    return out.empty() ? "*" : out;
}

}  // namespace isys
