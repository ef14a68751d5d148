#include "isys/turing.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "isys/error.hpp"

namespace isys {

const DeltaEntry* Dtm::action(std::string_view state, std::string_view read) const {
    auto it = delta.find({std::string(state), std::string(read)});
    return it == delta.end() ? nullptr : &it->second;
}

Word parse_word(std::string_view text) {
    Word w;
    if (text.find(',') != std::string_view::npos) {
        std::size_t start = 0;
        while (start <= text.size()) {
            auto end = text.find(',', start);
            if (end == std::string_view::npos) end = text.size();
            w.emplace_back(text.substr(start, end - start));
            start = end + 1;
        }
        return w;
    }
    for (char c : text) w.emplace_back(1, c);
    return w;
}

std::string format_word(const Word& w) {
    bool single = std::all_of(w.begin(), w.end(), [](const std::string& s) { return s.size() == 1; });
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i && !single) out += ",";
        out += w[i];
    }
    return out;
}

bool is_machine_identifier(std::string_view s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
               c == '+' || c == '-' || c == '\'';
    });
}

ValidationReport validate_dtm(const Dtm& m) {
    ValidationReport r;
    auto add = [&](std::string_view rule, std::string element) {
        r.findings.push_back(Finding{std::string(rule), std::move(element)});
    };

    std::set<std::string> gamma, sigma, states;
    for (const auto& g : m.tape_alphabet) {
        if (!is_machine_identifier(g)) add(rule::kInvalidIdentifier, "symbol '" + g + "'");
        if (!gamma.insert(g).second) add(rule::kDuplicateSymbol, g);
    }
    for (const auto& s : m.input_alphabet) {
        if (!sigma.insert(s).second) add(rule::kDuplicateSymbol, s);
        if (!gamma.count(s)) add(rule::kInputNotInTape, s);
    }
    if (!gamma.count(m.blank)) add(rule::kBlankNotInTape, m.blank);
    if (sigma.count(m.blank)) add(rule::kBlankInInput, m.blank);
    for (const auto& p : m.states) {
        if (!is_machine_identifier(p)) add(rule::kInvalidIdentifier, "state '" + p + "'");
        if (!states.insert(p).second) add(rule::kDuplicateMachineState, p);
    }
    for (const auto* p : {&m.initial, &m.accept, &m.reject})
        if (!states.count(*p)) add(rule::kUnknownMachineState, *p);
    if (m.accept == m.reject) add(rule::kHaltStatesEqual, m.accept);

    for (const auto& [key, entry] : m.delta) {
        const auto& [p, g] = key;
        std::string where = "delta(" + p + "," + g + ")";
        if (!states.count(p) || !gamma.count(g)) add(rule::kDeltaUnknown, where);
        if (m.is_halting(p)) add(rule::kDeltaOnHalt, where);
        if (!states.count(entry.next)) add(rule::kDeltaUnknown, where + " -> state " + entry.next);
        if (!gamma.count(entry.write)) add(rule::kDeltaUnknown, where + " -> symbol " + entry.write);
        if (entry.move != Move::Left && entry.move != Move::Right) add(rule::kDeltaUnknown, where + " move");
    }
    for (const auto& p : states) {
        if (m.is_halting(p)) continue;
        for (const auto& g : gamma)
            if (!m.action(p, g)) add(rule::kDeltaNotTotal, "delta(" + p + "," + g + ")");
    }
    return r;
}

std::string format_config(const Configuration& c) {
    std::string out = "(" + c.state + ";";
    for (std::size_t i = 0; i < c.tape.size(); ++i) {
        out += i ? ", " : " ";
        if (i == c.head) out += "[" + c.tape[i] + "]";
        else out += c.tape[i];
    }
    return out + ")";
}

Configuration initial_config(const Dtm& m, const Word& x) {
    for (const auto& s : x)
        if (std::find(m.input_alphabet.begin(), m.input_alphabet.end(), s) == m.input_alphabet.end())
            throw InvalidInput("symbol '" + s + "' is not in the input alphabet");
    Configuration c;
    c.state = m.initial;
    c.tape.reserve(x.size() + 2);
    c.tape.push_back(m.blank);
    c.tape.insert(c.tape.end(), x.begin(), x.end());
    c.tape.push_back(m.blank);
    c.head = 1;
    return c;
}

StepOutcome tm_step(const Dtm& m, const Configuration& c) {
    if (c.state == m.accept) return Halted{true};
    if (c.state == m.reject) return Halted{false};
    if (c.head >= c.tape.size()) throw InvalidInput("head outside tape");
    const DeltaEntry* d = m.action(c.state, c.tape[c.head]);
    if (!d) throw InvalidInput("delta undefined for (" + c.state + "," + c.tape[c.head] + ")");
    if (d->move == Move::Left && c.head == 0) return BoundViolation{};
    if (d->move == Move::Right && c.head + 1 >= c.tape.size()) return BoundViolation{};
    Configuration next = c;
    next.state = d->next;
    next.tape[c.head] = d->write;
    next.head = d->move == Move::Left ? c.head - 1 : c.head + 1;
    return next;
}

std::string_view to_string(RunOutcome o) {
    switch (o) {
        case RunOutcome::Accept: return "accept";
        case RunOutcome::Reject: return "reject";
        case RunOutcome::BoundViolation: return "bound-violation";
        case RunOutcome::StepLimit: return "step-limit";
    }
    return "?";
}

std::uint64_t default_step_limit(const Dtm& m, std::size_t input_length) {
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    auto mul = [](std::uint64_t a, std::uint64_t b) -> std::uint64_t {
        if (a != 0 && b > kMax / a) return kMax;
        return a * b;
    };
    const std::uint64_t cells = input_length + 2;
    std::uint64_t limit = mul(m.states.size(), cells);
    for (std::uint64_t i = 0; i < cells; ++i) limit = mul(limit, m.tape_alphabet.size());
    return limit;
}

RunResult run_tm(const Dtm& m, const Word& x, std::optional<std::uint64_t> max_steps) {
    auto report = validate_dtm(m);
    if (!report.ok()) throw InvalidInput("invalid machine: " + report.summary());
    const std::uint64_t limit = max_steps.value_or(default_step_limit(m, x.size()));

    RunResult r;
    r.last = initial_config(m, x);
    while (true) {
        auto out = tm_step(m, r.last);
        if (auto* h = std::get_if<Halted>(&out)) {
            r.outcome = h->accepted ? RunOutcome::Accept : RunOutcome::Reject;
            return r;
        }
        if (std::holds_alternative<BoundViolation>(out)) {
            r.outcome = RunOutcome::BoundViolation;
            return r;
        }
        if (r.steps >= limit) {
            r.outcome = RunOutcome::StepLimit;
            return r;
        }
        ++r.steps;
        r.last = std::get<Configuration>(std::move(out));
    }
}

}  // namespace isys
