#include "isys/fixtures.hpp"

#include "isys/error.hpp"

namespace isys::fixtures {

namespace {

void add_delta(Dtm& m, const std::string& p, const std::string& read, const std::string& next,
               const std::string& write, Move move) {
    m.delta[{p, read}] = DeltaEntry{next, write, move};
}

}  // namespace

InteractionSystem client_server(std::size_t clients) {
    if (clients == 0) throw InvalidInput("client/server needs at least one client");
    InteractionSystem sys;
    sys.model.components.push_back({"S", {"connect", "disconnect"}});
    sys.behaviors.push_back(LocalBehavior{{"idle", "connected"},
                                          {"connect", "disconnect"},
                                          {{"idle", "connect", "connected"}, {"connected", "disconnect", "idle"}},
                                          "idle"});
    for (std::size_t i = 1; i <= clients; ++i) {
        const auto id = std::to_string(i);
        const auto c = "c" + id;
        const auto connect = "connect_" + id;
        const auto disconnect = "disconnect_" + id;
        sys.model.components.push_back({c, {connect, disconnect}});
        sys.behaviors.push_back(LocalBehavior{{"idle", "connected"},
                                              {connect, disconnect},
                                              {{"idle", connect, "connected"}, {"connected", disconnect, "idle"}},
                                              "idle"});
        sys.model.interactions.push_back({"connect_S_" + c, {{"S", "connect"}, {c, connect}}});
        sys.model.interactions.push_back({"disconnect_S_" + c, {{"S", "disconnect"}, {c, disconnect}}});
    }
    return sys;
}

InteractionSystem pipeline(std::size_t stations) {
    if (stations < 2) throw InvalidInput("pipeline needs at least two stations");
    const std::size_t n = stations;
    InteractionSystem sys;
    for (std::size_t i = 1; i <= n; ++i) {
        const auto id = std::to_string(i);
        const auto name = "s" + id;
        const auto rec_m = "rec_m_" + id, send_m = "send_m_" + id;
        const auto rec_a = "rec_a_" + id, send_a = "send_a_" + id;
        if (i == 1) {
            sys.model.components.push_back({name, {send_m, rec_a}});
            sys.behaviors.push_back(LocalBehavior{{"idle", "waiting"},
                                                  {send_m, rec_a},
                                                  {{"idle", send_m, "waiting"}, {"waiting", rec_a, "idle"}},
                                                  "idle"});
        } else if (i == n) {
            sys.model.components.push_back({name, {rec_m, send_a}});
            sys.behaviors.push_back(LocalBehavior{{"idle", "has_msg"},
                                                  {rec_m, send_a},
                                                  {{"idle", rec_m, "has_msg"}, {"has_msg", send_a, "idle"}},
                                                  "idle"});
        } else {
            sys.model.components.push_back({name, {rec_m, send_m, rec_a, send_a}});
            sys.behaviors.push_back(LocalBehavior{{"idle", "has_msg", "sent", "has_ack"},
                                                  {rec_m, send_m, rec_a, send_a},
                                                  {{"idle", rec_m, "has_msg"},
                                                   {"has_msg", send_m, "sent"},
                                                   {"sent", rec_a, "has_ack"},
                                                   {"has_ack", send_a, "idle"}},
                                                  "idle"});
        }
    }
    for (std::size_t i = 1; i < n; ++i) {
        const auto a = std::to_string(i), b = std::to_string(i + 1);
        sys.model.interactions.push_back({"send_message_" + a, {{"s" + a, "send_m_" + a}, {"s" + b, "rec_m_" + b}}});
    }
    for (std::size_t i = 2; i <= n; ++i) {
        const auto a = std::to_string(i - 1), b = std::to_string(i);
        sys.model.interactions.push_back(
            {"send_acknowledge_" + b, {{"s" + a, "rec_a_" + a}, {"s" + b, "send_a_" + b}}});
    }
    return sys;
}

Dtm even_a() {
    Dtm m;
    m.tape_alphabet = {"a", "b"};
    m.input_alphabet = {"a"};
    m.blank = "b";
    m.states = {"p0", "p1", "pY", "pN"};
    m.initial = "p0";
    m.accept = "pY";
    m.reject = "pN";
    add_delta(m, "p0", "a", "p1", "a", Move::Right);
    add_delta(m, "p1", "a", "p0", "a", Move::Right);
    add_delta(m, "p0", "b", "pY", "b", Move::Left);
    add_delta(m, "p1", "b", "pN", "b", Move::Left);
    return m;
}

Dtm anbn() {
    Dtm m;
    m.tape_alphabet = {"a", "b", "X", "Y", "B"};
    m.input_alphabet = {"a", "b"};
    m.blank = "B";
    m.states = {"q0", "q1", "q2", "q3", "qY", "qN"};
    m.initial = "q0";
    m.accept = "qY";
    m.reject = "qN";
    const auto L = Move::Left, R = Move::Right;
    // q0: at the leftmost unmatched cell.
    add_delta(m, "q0", "a", "q1", "X", R);
    add_delta(m, "q0", "Y", "q3", "Y", R);
    add_delta(m, "q0", "B", "qY", "B", L);
    add_delta(m, "q0", "b", "qN", "b", R);
    add_delta(m, "q0", "X", "qN", "X", R);
    // q1: looking right for the first unmatched b.
    add_delta(m, "q1", "a", "q1", "a", R);
    add_delta(m, "q1", "Y", "q1", "Y", R);
    add_delta(m, "q1", "b", "q2", "Y", L);
    add_delta(m, "q1", "B", "qN", "B", L);
    add_delta(m, "q1", "X", "qN", "X", R);
    // q2: returning left to the last X.
    add_delta(m, "q2", "a", "q2", "a", L);
    add_delta(m, "q2", "Y", "q2", "Y", L);
    add_delta(m, "q2", "X", "q0", "X", R);
    add_delta(m, "q2", "b", "qN", "b", L);
    add_delta(m, "q2", "B", "qN", "B", R);
    // q3: every remaining cell must be Y.
    add_delta(m, "q3", "Y", "q3", "Y", R);
    add_delta(m, "q3", "B", "qY", "B", L);
    add_delta(m, "q3", "a", "qN", "a", L);
    add_delta(m, "q3", "b", "qN", "b", L);
    add_delta(m, "q3", "X", "qN", "X", L);
    return m;
}

Dtm runaway() {
    Dtm m;
    m.tape_alphabet = {"a", "b"};
    m.input_alphabet = {"a"};
    m.blank = "b";
    m.states = {"r", "yes", "no"};
    m.initial = "r";
    m.accept = "yes";
    m.reject = "no";
    add_delta(m, "r", "a", "r", "a", Move::Right);
    add_delta(m, "r", "b", "r", "b", Move::Right);
    return m;
}

Dtm ping_pong() {
    Dtm m;
    m.tape_alphabet = {"a", "b"};
    m.input_alphabet = {"a"};
    m.blank = "b";
    m.states = {"go", "back", "yes", "no"};
    m.initial = "go";
    m.accept = "yes";
    m.reject = "no";
    add_delta(m, "go", "a", "back", "a", Move::Right);
    add_delta(m, "go", "b", "no", "b", Move::Left);
    add_delta(m, "back", "a", "go", "a", Move::Left);
    add_delta(m, "back", "b", "go", "b", Move::Left);
    return m;
}

}  // namespace isys::fixtures
