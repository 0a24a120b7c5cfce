#pragma once

// Instantiation of a parameterised parity game into a symbolic one.
//
// States are integer vectors: slot 0 holds the predicate-variable index, the
// remaining slots hold the equation parameters after unifying parameters with
// equal name and sort across equations. Per-slot value tables map data values
// to dense codes and grow during exploration. The transition relation is
// partitioned into groups (one per equation, or one per atom when splitting);
// each group stores only the slots it reads or writes, as old/new pairs, and
// is learned lazily: a (group, short state) pair is expanded exactly once.
//
// Simple atoms route to one of two sink families: a conjunctive equation with
// a false simple atom gets an edge to the FALSE sink, a disjunctive one with
// a true simple atom to the TRUE sink, and an equation whose atoms all drop
// goes to its neutral sink. Sink states keep the source's data slots, so sink
// edges never widen a group's dependencies. TRUE sinks are stuck Abelard
// vertices (priority 0), FALSE sinks stuck Eloise vertices (priority 1).

#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <sympg/mdd.hpp>
#include <sympg/ppg.hpp>

namespace sympg {

class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

constexpr int kEloise = 0;
constexpr int kAbelard = 1;

// --- state vector layout -------------------------------------------------------

struct ValueTable {
    std::vector<Value> values;
    std::unordered_map<std::string, uint32_t> index;

    uint32_t encode(const Value& v, const SortTable& sorts) {
        std::string key = sorts.print(v);
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        uint32_t code = uint32_t(values.size());
        values.push_back(v);
        index.emplace(std::move(key), code);
        return code;
    }

    const Value& decode(uint32_t code) const { return values[code]; }
};

struct StateVectorLayout {
    std::vector<std::string> slot_names;              // [0] = "Var"
    std::vector<int> slot_sorts;                      // sort per data slot, -1 for Var
    std::vector<std::vector<uint32_t>> eq_param_slots;  // [equation][param index] -> slot
    std::vector<ValueTable> tables;                   // per slot; [0] unused

    uint32_t width() const { return uint32_t(slot_names.size()); }

    uint32_t slot_of(const std::string& name) const {
        for (uint32_t i = 1; i < slot_names.size(); ++i)
            if (slot_names[i] == name) return i;
        throw spec_error("no slot for parameter '" + name + "'");
    }

    bool has_slot(const std::string& name) const {
        for (uint32_t i = 1; i < slot_names.size(); ++i)
            if (slot_names[i] == name) return true;
        return false;
    }
};

// Parameters with equal (name, sort) share a slot; new parameters get fresh
// slots in first-occurrence order.
inline StateVectorLayout make_layout(const Ppg& p) {
    StateVectorLayout out;
    out.slot_names.push_back("Var");
    out.slot_sorts.push_back(-1);
    for (const auto& eq : p.equations) {
        std::vector<uint32_t> slots;
        for (const auto& param : eq.params) {
            uint32_t slot = 0;
            for (uint32_t i = 1; i < out.slot_names.size(); ++i) {
                if (out.slot_names[i] == param.name) {
                    if (out.slot_sorts[i] != param.sort)
                        throw spec_error("parameter '" + param.name +
                                         "' used with two different sorts");
                    slot = i;
                    break;
                }
            }
            if (slot == 0) {
                slot = uint32_t(out.slot_names.size());
                out.slot_names.push_back(param.name);
                out.slot_sorts.push_back(param.sort);
            }
            slots.push_back(slot);
        }
        out.eq_param_slots.push_back(std::move(slots));
    }
    out.tables.resize(out.slot_names.size());
    return out;
}

// --- transition groups and the dependency matrix ----------------------------------

enum class Partition { Simple, Split };

struct TransitionGroup {
    int id = 0;              // 1-based, application order
    int eq = 0;              // source equation
    int atom_begin = 0;
    int atom_end = 0;        // exclusive
    std::string name;        // equation name, plus .k for split conjuncts
    std::vector<uint32_t> deps;  // strictly increasing, always contains 0
};

inline std::vector<TransitionGroup> partition(const Ppg& p, Partition strategy) {
    std::vector<TransitionGroup> out;
    for (size_t e = 0; e < p.equations.size(); ++e) {
        const auto& eq = p.equations[e];
        if (strategy == Partition::Simple || eq.atoms.size() <= 1) {
            TransitionGroup g;
            g.eq = int(e);
            g.atom_begin = 0;
            g.atom_end = int(eq.atoms.size());
            g.name = eq.name;
            out.push_back(std::move(g));
        } else {
            for (size_t a = 0; a < eq.atoms.size(); ++a) {
                TransitionGroup g;
                g.eq = int(e);
                g.atom_begin = int(a);
                g.atom_end = int(a + 1);
                g.name = eq.name + "." + std::to_string(a + 1);
                out.push_back(std::move(g));
            }
        }
    }
    for (size_t i = 0; i < out.size(); ++i) out[i].id = int(i + 1);
    return out;
}

struct DependencyMatrix {
    std::vector<std::vector<bool>> rows;  // [group][slot]
};

namespace detail {

inline void mark_reads(const ExprPtr& e, const PpgEquation& eq, const PpgAtom& atom,
                       const StateVectorLayout& layout, std::vector<bool>& row) {
    std::vector<std::string> vars;
    free_vars(*e, vars);
    for (const auto& v : vars) {
        bool bound = false;
        for (const auto& q : atom.qvars) bound |= q.name == v;
        if (bound) continue;
        row[layout.slot_of(v)] = true;
    }
}

}  // namespace detail

// A slot is dependent when the group reads it (guards, simple formulae, call
// arguments other than an identical pass-through) or writes it (a call
// argument that is not the slot's own variable, or a parameter the callee
// does not carry, which resets to the don't-care value).
inline DependencyMatrix dependency_matrix(const Ppg& p, const StateVectorLayout& layout,
                                          const std::vector<TransitionGroup>& groups) {
    DependencyMatrix m;
    for (const auto& g : groups) {
        std::vector<bool> row(layout.width(), false);
        row[0] = true;
        const auto& eq = p.equations[size_t(g.eq)];
        const auto& src_slots = layout.eq_param_slots[size_t(g.eq)];
        for (int ai = g.atom_begin; ai < g.atom_end; ++ai) {
            const PpgAtom& atom = eq.atoms[size_t(ai)];
            if (atom.guard) detail::mark_reads(atom.guard, eq, atom, layout, row);
            if (!atom.has_call) {
                if (atom.simple) detail::mark_reads(atom.simple, eq, atom, layout, row);
                continue;
            }
            int callee = p.index_of(atom.call);
            const auto& dst_slots = layout.eq_param_slots[size_t(callee)];
            for (size_t k = 0; k < atom.args.size(); ++k) {
                const ExprPtr& arg = atom.args[k];
                uint32_t dst = dst_slots[k];
                if (arg->op == ExOp::Var && layout.has_slot(arg->var) &&
                    layout.slot_of(arg->var) == dst) {
                    bool is_src_param = false;
                    for (auto s : src_slots) is_src_param |= s == dst;
                    if (is_src_param) continue;  // pass-through
                }
                row[dst] = true;
                detail::mark_reads(arg, eq, atom, layout, row);
            }
            for (auto s : src_slots) {
                bool kept = false;
                for (auto d : dst_slots) kept |= d == s;
                if (!kept) row[s] = true;  // reset to don't-care on the target
            }
        }
        m.rows.push_back(std::move(row));
    }
    return m;
}

inline void attach_deps(std::vector<TransitionGroup>& groups, const DependencyMatrix& m) {
    for (size_t i = 0; i < groups.size(); ++i) {
        groups[i].deps.clear();
        for (uint32_t s = 0; s < m.rows[i].size(); ++s)
            if (m.rows[i][s]) groups[i].deps.push_back(s);
    }
}

inline std::string dump_matrix(const Ppg& p, const StateVectorLayout& layout,
                               const std::vector<TransitionGroup>& groups,
                               const DependencyMatrix& m) {
    size_t name_w = 5;
    for (const auto& g : groups) name_w = std::max(name_w, g.name.size());
    std::ostringstream os;
    os << std::string(name_w + 1, ' ');
    for (const auto& s : layout.slot_names) os << s << " ";
    os << "\n";
    for (size_t i = 0; i < groups.size(); ++i) {
        os << groups[i].name << std::string(name_w + 1 - groups[i].name.size(), ' ');
        for (uint32_t s = 0; s < layout.width(); ++s)
            os << (m.rows[i][s] ? "+" : "-") << std::string(layout.slot_names[s].size(), ' ');
        os << "\n";
    }
    return os.str();
}

// --- the symbolic game ------------------------------------------------------------

struct VarInfo {
    std::string name;
    int owner = kAbelard;
    int priority = 0;
    bool sink = false;
};

struct SymbolicParityGame {
    NodeStore* store = nullptr;
    StateVectorLayout layout;
    std::vector<VarInfo> vars;        // per slot-0 code
    uint32_t true_sink = 0, false_sink = 0;

    MddSet vertices;
    MddSet owned[2];
    std::vector<std::pair<int, MddSet>> by_priority;  // ascending priorities
    std::vector<TransitionGroup> groups;
    std::vector<GroupRelation> relations;
    std::vector<uint32_t> initial;

    MddSet priority_set(int prio) const {
        for (const auto& [k, s] : by_priority)
            if (k == prio) return s;
        return MddSet(*store, layout.width());
    }

    std::string decode_label(const std::vector<uint32_t>& v) const {
        const VarInfo& vi = vars[v[0]];
        if (vi.sink) return vi.name;
        std::ostringstream os;
        os << vi.name << "(";
        bool first = true;
        for (uint32_t s = 1; s < layout.width(); ++s) {
            bool live = false;
            // parameters of this equation only
            for (auto ps : eq_slots_of(v[0])) live |= ps == s;
            if (!live) continue;
            if (!first) os << ",";
            first = false;
            os << (v[s] < layout.tables[s].values.size()
                       ? print_value(s, v[s])
                       : std::string("?"));
        }
        os << ")";
        return os.str();
    }

    std::string print_value(uint32_t slot, uint32_t code) const { return labels_ ? (*labels_)[slot][code] : ""; }

    // filled by instantiation for label decoding without the sort table
    std::shared_ptr<std::vector<std::vector<std::string>>> labels_;
    std::vector<std::vector<uint32_t>> eq_param_slot_view;

    const std::vector<uint32_t>& eq_slots_of(uint32_t var_code) const {
        static const std::vector<uint32_t> none;
        return var_code < eq_param_slot_view.size() ? eq_param_slot_view[var_code] : none;
    }
};

// --- instantiation ------------------------------------------------------------------

struct InstantiateOptions {
    big_uint max_states = 0;  // 0 = unlimited
    std::function<void(int level, const big_uint& states)> progress;
};

class Instantiator {
public:
    Instantiator(NodeStore& store, const Ppg& p, const StateVectorLayout& layout,
                 const std::vector<TransitionGroup>& groups, const SortTable& sorts)
        : store_(store), ppg_(p), sorts_(sorts) {
        game_.store = &store;
        game_.layout = layout;
        game_.groups = groups;
    }

    SymbolicParityGame run(const InstantiateOptions& opts = {}) {
        const uint32_t width = game_.layout.width();
        setup_vars();

        for (auto& g : game_.groups)
            game_.relations.emplace_back(store_, g.deps);
        std::vector<MddSet> expanded;
        for (auto& g : game_.groups)
            expanded.emplace_back(store_, uint32_t(g.deps.size()));

        game_.vertices = MddSet(store_, width);
        game_.owned[0] = MddSet(store_, width);
        game_.owned[1] = MddSet(store_, width);

        game_.initial = encode_initial();
        MddSet fresh(store_, width);
        fresh = set_insert(fresh, game_.initial);
        game_.vertices = fresh;
        register_states(fresh);

        int level = 0;
        while (!fresh.empty()) {
            if (opts.max_states != 0 && set_count(game_.vertices) > opts.max_states)
                throw resource_error("state budget exceeded (" +
                                     set_count(game_.vertices).str() + " states)");
            MddSet next(store_, width);
            for (size_t gi = 0; gi < game_.groups.size(); ++gi) {
                const TransitionGroup& g = game_.groups[gi];
                MddSet fg = set_select0(fresh, uint32_t(g.eq));
                if (fg.empty()) continue;
                MddSet shorts = set_project(fg, game_.relations[gi].deps_id);
                MddSet new_shorts = set_difference(shorts, expanded[gi]);
                expanded[gi] = set_union(expanded[gi], new_shorts);
                for (const auto& u : set_enumerate(new_shorts, SIZE_MAX))
                    expand(gi, u);
                next = set_union(next, rel_next(fg, game_.relations[gi]));
            }
            fresh = set_difference(next, game_.vertices);
            game_.vertices = set_union(game_.vertices, fresh);
            register_states(fresh);
            ++level;
            if (opts.progress) opts.progress(level, set_count(game_.vertices));
        }
        finalize_labels();
        return std::move(game_);
    }

    // Successor short vectors of one short source state for one group;
    // exposed for tests.
    std::vector<std::vector<uint32_t>> local_successors(size_t gi, const std::vector<uint32_t>& u) {
        targets_.clear();
        compute_successors(gi, u);
        return targets_;
    }

private:
    void setup_vars() {
        for (size_t e = 0; e < ppg_.equations.size(); ++e) {
            const auto& eq = ppg_.equations[e];
            game_.vars.push_back(VarInfo{eq.name, eq.conjunctive ? kAbelard : kEloise,
                                         eq.priority, false});
        }
        game_.true_sink = uint32_t(game_.vars.size());
        game_.vars.push_back(VarInfo{"@true", kAbelard, 0, true});
        game_.false_sink = uint32_t(game_.vars.size());
        game_.vars.push_back(VarInfo{"@false", kEloise, 1, true});
        game_.eq_param_slot_view = game_.layout.eq_param_slots;
    }

    std::vector<uint32_t> encode_initial() {
        int init_eq = ppg_.index_of(ppg_.init_var);
        if (init_eq < 0) throw spec_error("unknown initial variable '" + ppg_.init_var + "'");
        const auto& eq = ppg_.equations[size_t(init_eq)];
        std::vector<uint32_t> v(game_.layout.width(), 0);
        v[0] = uint32_t(init_eq);
        Env empty;
        for (size_t k = 0; k < eq.params.size(); ++k) {
            Value val = eval_data(*ppg_.init_args[k], empty, sorts_);
            if (val.is_undef() || !sorts_.valid(eq.params[k].sort, val))
                throw spec_error("initial value for parameter '" + eq.params[k].name +
                                 "' is not a value of its sort");
            v[game_.layout.eq_param_slots[size_t(init_eq)][k]] = encode_value(
                game_.layout.eq_param_slots[size_t(init_eq)][k], val);
        }
        return v;
    }

    uint32_t encode_value(uint32_t slot, const Value& v) {
        return game_.layout.tables[slot].encode(v, sorts_);
    }

    void register_states(const MddSet& states) {
        if (states.empty()) return;
        for (uint32_t code = 0; code < game_.vars.size(); ++code) {
            MddSet sel = set_select0(states, code);
            if (sel.empty()) continue;
            const VarInfo& vi = game_.vars[code];
            game_.owned[vi.owner] = set_union(game_.owned[vi.owner], sel);
            bool found = false;
            for (auto& [prio, s] : game_.by_priority) {
                if (prio == vi.priority) {
                    s = set_union(s, sel);
                    found = true;
                }
            }
            if (!found) {
                game_.by_priority.emplace_back(vi.priority, sel);
                std::sort(game_.by_priority.begin(), game_.by_priority.end(),
                          [](const auto& a, const auto& b) { return a.first < b.first; });
            }
        }
    }

    // --- local successor computation -------------------------------------------------

    void expand(size_t gi, const std::vector<uint32_t>& u) {
        targets_.clear();
        compute_successors(gi, u);
        for (const auto& t : targets_)
            game_.relations[gi] = rel_insert(game_.relations[gi], u, t);
    }

    void compute_successors(size_t gi, const std::vector<uint32_t>& u) {
        const TransitionGroup& g = game_.groups[size_t(gi)];
        const PpgEquation& eq = ppg_.equations[size_t(g.eq)];
        const auto& deps = g.deps;

        // bind source parameters that live on dependent slots
        Env env;
        const auto& src_slots = game_.layout.eq_param_slots[size_t(g.eq)];
        for (size_t k = 0; k < eq.params.size(); ++k) {
            for (size_t j = 0; j < deps.size(); ++j) {
                if (deps[j] == src_slots[k]) {
                    env.push(eq.params[k].name, game_.layout.tables[src_slots[k]].decode(u[j]));
                    break;
                }
            }
        }

        bool any = false;
        for (int ai = g.atom_begin; ai < g.atom_end; ++ai)
            any |= eval_atom(eq, eq.atoms[size_t(ai)], gi, u, env);
        if (!any){
            // all atoms dropped: neutral sink keeps the equation's truth
            push_sink(gi, u, eq.conjunctive ? game_.true_sink : game_.false_sink);
        }
    }

    // Returns true when the atom contributed at least one successor.
    bool eval_atom(const PpgEquation& eq, const PpgAtom& atom, size_t gi,
                   const std::vector<uint32_t>& u, Env& env) {
        bool contributed = false;
        bool simple_failed = false;  // conjunctive: some assignment falsifies a simple atom
        bool simple_held = false;    // disjunctive: some assignment satisfies one

        enumerate_qvars(atom, 0, env, [&](Env& scoped) {
            if (atom.guard) {
                Value gv = eval_data(*atom.guard, scoped, sorts_);
                if (gv.is_undef() || !gv.as_bool()) return;
            }
            if (!atom.has_call) {
                Value sv = eval_data(*atom.simple, scoped, sorts_);
                bool truth = !sv.is_undef() && sv.as_bool();
                if (eq.conjunctive && !truth) simple_failed = true;
                if (!eq.conjunctive && truth) simple_held = true;
                return;
            }
            int callee = ppg_.index_of(atom.call);
            const auto& dst_slots = game_.layout.eq_param_slots[size_t(callee)];
            std::vector<uint32_t> t(u.size(), 0);
            const auto& deps = game_.groups[gi].deps;
            t[0] = uint32_t(callee);
            for (size_t j = 1; j < deps.size(); ++j) {
                // default: slots the callee does not carry reset to don't-care 0
                t[j] = 0;
            }
            for (size_t k = 0; k < atom.args.size(); ++k) {
                uint32_t dst = dst_slots[k];
                long j = dep_index(deps, dst);
                if (j < 0) continue;  // pass-through slot, copied by the relation
                Value av = eval_data(*atom.args[k], scoped, sorts_);
                if (av.is_undef() || !sorts_.valid(ppg_.equations[size_t(callee)].params[k].sort, av))
                    return;  // undefined argument: treat the atom as guard-false
                t[size_t(j)] = encode_value(dst, av);
            }
            targets_.push_back(std::move(t));
            contributed = true;
        });

        if (eq.conjunctive && simple_failed) {
            push_sink(gi, u, game_.false_sink);
            contributed = true;
        }
        if (!eq.conjunctive && simple_held) {
            push_sink(gi, u, game_.true_sink);
            contributed = true;
        }
        return contributed;
    }

    template <typename F>
    void enumerate_qvars(const PpgAtom& atom, size_t qi, Env& env, F&& body) {
        if (qi == atom.qvars.size()) {
            body(env);
            return;
        }
        for (const Value& v : sorts_.enumerate(atom.qvars[qi].sort)) {
            env.push(atom.qvars[qi].name, v);
            enumerate_qvars(atom, qi + 1, env, body);
            env.pop();
        }
    }

    static long dep_index(const std::vector<uint32_t>& deps, uint32_t slot) {
        auto it = std::lower_bound(deps.begin(), deps.end(), slot);
        if (it == deps.end() || *it != slot) return -1;
        return it - deps.begin();
    }

    void push_sink(size_t gi, const std::vector<uint32_t>& u, uint32_t sink) {
        // sink vertices inherit the source's data slots
        std::vector<uint32_t> t = u;
        t[0] = sink;
        for (const auto& existing : targets_)
            if (existing == t) return;
        targets_.push_back(std::move(t));
    }

    void finalize_labels() {
        auto labels = std::make_shared<std::vector<std::vector<std::string>>>();
        labels->resize(game_.layout.width());
        for (uint32_t s = 1; s < game_.layout.width(); ++s)
            for (const auto& v : game_.layout.tables[s].values)
                (*labels)[s].push_back(sorts_.print(v));
        game_.labels_ = std::move(labels);
    }

    NodeStore& store_;
    const Ppg& ppg_;
    const SortTable& sorts_;
    SymbolicParityGame game_;
    std::vector<std::vector<uint32_t>> targets_;
};

inline SymbolicParityGame instantiate(NodeStore& store, const Ppg& p,
                                      const StateVectorLayout& layout,
                                      const std::vector<TransitionGroup>& groups,
                                      const InstantiateOptions& opts = {}) {
    Instantiator inst(store, p, layout, groups, *p.sorts);
    return inst.run(opts);
}

// --- statistics -----------------------------------------------------------------

struct GameStats {
    big_uint states;
    uint64_t state_nodes = 0;
    uint64_t relation_nodes = 0;
    std::vector<uint64_t> per_group_nodes;
    std::vector<size_t> per_group_deps;
};

inline GameStats stats(const SymbolicParityGame& g) {
    GameStats s;
    s.states = set_count(g.vertices);
    s.state_nodes = g.store->node_count(g.vertices.root);
    for (const auto& r : g.relations) {
        uint64_t n = g.store->node_count(r.root);
        s.per_group_nodes.push_back(n);
        s.per_group_deps.push_back(r.deps.size());
        s.relation_nodes += n;
    }
    return s;
}

}  // namespace sympg
