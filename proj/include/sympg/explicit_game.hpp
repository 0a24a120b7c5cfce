#pragma once

// Explicit parity games in PGSolver text form, and an explicit recursive
// solver used as the oracle for the symbolic one. The explicit solver deals
// with stuck vertices natively: a player stuck at their own vertex loses, so
// attractors of stuck sets are peeled off before the recursion, which then
// runs on a total game. The recursion uses an explicit stack.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sympg {

class pg_parse_error : public std::runtime_error {
public:
    explicit pg_parse_error(const std::string& what) : std::runtime_error(what) {}
};

struct ExVertex {
    int priority = 0;
    int owner = 0;  // 0 = Eloise (even), 1 = Abelard (odd)
    std::vector<uint32_t> succ;
    std::string label;
};

struct ExplicitGame {
    std::vector<ExVertex> v;
    uint32_t initial = 0;
};

// --- PGSolver format ------------------------------------------------------------

inline std::string print_pgsolver(const ExplicitGame& g) {
    std::ostringstream os;
    os << "parity " << (g.v.empty() ? 0 : g.v.size() - 1) << ";\n";
    for (size_t i = 0; i < g.v.size(); ++i) {
        const ExVertex& u = g.v[i];
        os << i << " " << u.priority << " " << u.owner << " ";
        for (size_t k = 0; k < u.succ.size(); ++k) os << (k ? "," : "") << u.succ[k];
        if (!u.label.empty()) os << " \"" << u.label << "\"";
        os << ";\n";
    }
    return os.str();
}

inline ExplicitGame parse_pgsolver(const std::string& text) {
    ExplicitGame g;
    size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' ||
                                   text[i] == '\r'))
            ++i;
    };
    auto number = [&]() -> long {
        skip_ws();
        size_t j = i;
        while (j < text.size() && isdigit(text[j])) ++j;
        if (j == i) throw pg_parse_error("expected number at offset " + std::to_string(i));
        long n = std::stol(text.substr(i, j - i));
        i = j;
        return n;
    };
    skip_ws();
    if (text.compare(i, 6, "parity") == 0) {
        i += 6;
        number();
        skip_ws();
        if (i >= text.size() || text[i] != ';') throw pg_parse_error("expected ';' after header");
        ++i;
    }
    for (skip_ws(); i < text.size(); skip_ws()) {
        size_t id = size_t(number());
        if (g.v.size() <= id) g.v.resize(id + 1);
        ExVertex u;
        u.priority = int(number());
        u.owner = int(number());
        if (u.owner != 0 && u.owner != 1) throw pg_parse_error("owner must be 0 or 1");
        skip_ws();
        while (i < text.size() && isdigit(text[i])) {
            u.succ.push_back(uint32_t(number()));
            skip_ws();
            if (i < text.size() && text[i] == ',') { ++i; skip_ws(); }
            else break;
        }
        skip_ws();
        if (i < text.size() && text[i] == '"') {
            size_t end = text.find('"', i + 1);
            if (end == std::string::npos) throw pg_parse_error("unterminated label");
            u.label = text.substr(i + 1, end - i - 1);
            i = end + 1;
            skip_ws();
        }
        if (i >= text.size() || text[i] != ';') throw pg_parse_error("expected ';' after vertex");
        ++i;
        g.v[id] = std::move(u);
    }
    for (const auto& u : g.v)
        for (uint32_t s : u.succ)
            if (s >= g.v.size()) throw pg_parse_error("successor id out of range");
    return g;
}

// --- explicit attractor -----------------------------------------------------------

// Least set A >= targets such that player's vertices with a successor in A
// and opponent vertices with all alive successors in A are in A. Vertices
// outside `alive` are ignored entirely.
inline std::vector<uint32_t> attractor_explicit(const ExplicitGame& g,
                                                const std::vector<std::vector<uint32_t>>& pred,
                                                int player, const std::vector<uint32_t>& targets,
                                                const std::vector<char>& alive) {
    std::vector<char> in(g.v.size(), 0);
    std::vector<int> cnt(g.v.size(), 0);
    for (size_t u = 0; u < g.v.size(); ++u) {
        if (!alive[u]) continue;
        for (uint32_t w : g.v[u].succ)
            if (alive[w]) ++cnt[u];
    }
    std::deque<uint32_t> queue;
    std::vector<uint32_t> out;
    for (uint32_t t : targets) {
        if (!alive[t] || in[t]) continue;
        in[t] = 1;
        queue.push_back(t);
        out.push_back(t);
    }
    while (!queue.empty()) {
        uint32_t u = queue.front();
        queue.pop_front();
        for (uint32_t w : pred[u]) {
            if (!alive[w] || in[w]) continue;
            bool attract = false;
            if (g.v[w].owner == player) attract = true;
            else if (--cnt[w] == 0) attract = true;
            if (attract) {
                in[w] = 1;
                queue.push_back(w);
                out.push_back(w);
            }
        }
    }
    return out;
}

inline std::vector<std::vector<uint32_t>> predecessors(const ExplicitGame& g) {
    std::vector<std::vector<uint32_t>> pred(g.v.size());
    for (size_t u = 0; u < g.v.size(); ++u)
        for (uint32_t w : g.v[u].succ) pred[w].push_back(uint32_t(u));
    return pred;
}

// --- explicit Zielonka -----------------------------------------------------------

// Winner per vertex: 0 for Eloise, 1 for Abelard. Min-parity convention:
// the minimum priority seen infinitely often decides, even favours Eloise;
// a stuck player loses the finite play.
inline std::vector<int> solve_explicit(const ExplicitGame& game_in) {
    ExplicitGame g = game_in;  // normalized copy: duplicate edges would skew counters
    for (auto& u : g.v) {
        std::sort(u.succ.begin(), u.succ.end());
        u.succ.erase(std::unique(u.succ.begin(), u.succ.end()), u.succ.end());
    }
    const size_t n = g.v.size();
    std::vector<int> winner(n, -1);
    if (n == 0) return winner;
    auto pred = predecessors(g);
    std::vector<char> alive(n, 1);

    // peel attractors of stuck vertices; afterwards the game is total
    for (int p : {0, 1}) {
        std::vector<uint32_t> stuck;
        for (uint32_t u = 0; u < n; ++u) {
            if (!alive[u] || g.v[u].owner != p) continue;
            bool has = false;
            for (uint32_t w : g.v[u].succ) has |= bool(alive[w]);
            if (!has) stuck.push_back(u);
        }
        auto won = attractor_explicit(g, pred, 1 - p, stuck, alive);
        for (uint32_t u : won) {
            winner[u] = 1 - p;
            alive[u] = 0;
        }
    }

    struct Frame {
        std::vector<uint32_t> sub;
        int phase = 0;
        int p = 0;
        std::vector<uint32_t> removed;  // A in phase 0->1, B in phase 1->2
        std::vector<int> child0;        // winners of first recursion, by vertex
    };

    std::vector<uint32_t> all;
    for (uint32_t u = 0; u < n; ++u)
        if (alive[u]) all.push_back(u);

    // result of the last returned call: winner assignment for its subgame
    std::vector<int> result(n, -1);
    std::vector<Frame> stack;
    stack.push_back(Frame{std::move(all), 0, 0, {}, {}});
    std::vector<char> sub_alive(n, 0);

    auto compute_attractor = [&](int player, const std::vector<uint32_t>& targets,
                                 const std::vector<uint32_t>& sub) {
        for (uint32_t u : sub) sub_alive[u] = 1;
        auto out = attractor_explicit(g, pred, player, targets, sub_alive);
        for (uint32_t u : sub) sub_alive[u] = 0;
        return out;
    };

    bool have_result = false;
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.sub.empty()) {
            have_result = true;
            stack.pop_back();
            continue;
        }
        if (f.phase == 0) {
            int d = INT32_MAX;
            for (uint32_t u : f.sub) d = std::min(d, g.v[u].priority);
            f.p = d % 2;
            std::vector<uint32_t> N;
            for (uint32_t u : f.sub)
                if (g.v[u].priority == d) N.push_back(u);
            f.removed = compute_attractor(f.p, N, f.sub);
            f.phase = 1;
            std::vector<uint32_t> rest;
            for (uint32_t u : f.sub) sub_alive[u] = 1;
            for (uint32_t u : f.removed) sub_alive[u] = 0;
            for (uint32_t u : f.sub)
                if (sub_alive[u]) rest.push_back(u);
            for (uint32_t u : f.sub) sub_alive[u] = 0;
            stack.push_back(Frame{std::move(rest), 0, 0, {}, {}});
            continue;
        }
        if (f.phase == 1) {
            // child solved f.sub \ A; collect the opponent's wins there,
            // ignoring stale entries for vertices of A itself
            for (uint32_t u : f.removed) sub_alive[u] = 1;
            std::vector<uint32_t> w_opp;
            for (uint32_t u : f.sub)
                if (!sub_alive[u] && result[u] == 1 - f.p) w_opp.push_back(u);
            for (uint32_t u : f.removed) sub_alive[u] = 0;
            if (w_opp.empty()) {
                for (uint32_t u : f.sub) result[u] = f.p;
                have_result = true;
                stack.pop_back();
                continue;
            }
            f.removed = compute_attractor(1 - f.p, w_opp, f.sub);
            f.phase = 2;
            std::vector<uint32_t> rest;
            for (uint32_t u : f.sub) sub_alive[u] = 1;
            for (uint32_t u : f.removed) sub_alive[u] = 0;
            for (uint32_t u : f.sub)
                if (sub_alive[u]) rest.push_back(u);
            for (uint32_t u : f.sub) sub_alive[u] = 0;
            stack.push_back(Frame{std::move(rest), 0, 0, {}, {}});
            continue;
        }
        // phase 2: child solved f.sub \ B; B goes to the opponent
        for (uint32_t u : f.removed) result[u] = 1 - f.p;
        have_result = true;
        stack.pop_back();
    }
    (void)have_result;

    for (uint32_t u = 0; u < n; ++u)
        if (alive[u]) winner[u] = result[u];
    return winner;
}

inline int winner_at(const ExplicitGame& g, const std::vector<int>& winners) {
    return winners[g.initial];
}

}  // namespace sympg
