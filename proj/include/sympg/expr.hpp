#pragma once

// Data expressions over finite sorts: typed trees with a total evaluator.
// Partial operations (head/tail of the empty list, out-of-bound append)
// yield a distinguished undefined value; comparisons touching an undefined
// operand evaluate to false, so guards built from them stay total.

#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <sympg/values.hpp>

namespace sympg {

enum class ExOp {
    Const, Var,
    Eq, Ne, Lt, Le, Gt, Ge,
    Add, Sub, Mul, Mod,
    And, Or, Not, Imp, Ite,
    Head, Tail, Append, Len
};

// Expression types: booleans, integers (literals are compatible with any
// bounded integer sort), named sorts, and the polymorphic [] literal.
struct ExType {
    enum Kind { Bool, IntAny, Ref, NilList } kind = Bool;
    int sort = -1;

    static ExType boolean() { return {Bool, -1}; }
    static ExType int_any() { return {IntAny, -1}; }
    static ExType ref(int s) { return {Ref, s}; }
    static ExType nil() { return {NilList, -1}; }
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    ExOp op;
    Value cval;                  // Const
    std::string var;             // Var
    std::vector<ExprPtr> kids;
    ExType type;
    int line = 0, col = 0;
};

inline ExprPtr mk_const(Value v, ExType t) {
    auto e = std::make_shared<Expr>();
    e->op = ExOp::Const;
    e->cval = std::move(v);
    e->type = t;
    return e;
}

inline ExprPtr mk_var(std::string name, ExType t) {
    auto e = std::make_shared<Expr>();
    e->op = ExOp::Var;
    e->var = std::move(name);
    e->type = t;
    return e;
}

inline ExprPtr mk_op(ExOp op, std::vector<ExprPtr> kids, ExType t) {
    auto e = std::make_shared<Expr>();
    e->op = op;
    e->kids = std::move(kids);
    e->type = t;
    return e;
}

inline ExprPtr mk_true() { return mk_const(Value::boolean(true), ExType::boolean()); }
inline ExprPtr mk_false() { return mk_const(Value::boolean(false), ExType::boolean()); }

inline bool is_const_bool(const ExprPtr& e, bool b) {
    return e->op == ExOp::Const && e->cval.kind == Value::Kind::Bool && e->cval.as_bool() == b;
}

// Conjunction with constant folding.
inline ExprPtr mk_and(ExprPtr a, ExprPtr b) {
    if (is_const_bool(a, true)) return b;
    if (is_const_bool(b, true)) return a;
    if (is_const_bool(a, false) || is_const_bool(b, false)) return mk_false();
    return mk_op(ExOp::And, {std::move(a), std::move(b)}, ExType::boolean());
}

inline ExprPtr mk_not(ExprPtr a) {
    if (is_const_bool(a, true)) return mk_false();
    if (is_const_bool(a, false)) return mk_true();
    if (a->op == ExOp::Not) return a->kids[0];
    return mk_op(ExOp::Not, {std::move(a)}, ExType::boolean());
}

inline ExprPtr mk_or(ExprPtr a, ExprPtr b) {
    if (is_const_bool(a, false)) return b;
    if (is_const_bool(b, false)) return a;
    if (is_const_bool(a, true) || is_const_bool(b, true)) return mk_true();
    return mk_op(ExOp::Or, {std::move(a), std::move(b)}, ExType::boolean());
}

// --- environments ----------------------------------------------------------

// Small flat environment; scopes are shallow (process parameters plus a few
// bound variables), so linear scans beat hashing here.
class Env {
public:
    void push(const std::string& name, Value v) { entries_.emplace_back(&name, std::move(v)); }
    void pop() { entries_.pop_back(); }
    size_t mark() const { return entries_.size(); }
    void rewind(size_t m) { entries_.resize(m); }

    const Value* find(const std::string& name) const {
        for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
            if (*it->first == name) return &it->second;
        return nullptr;
    }

private:
    std::vector<std::pair<const std::string*, Value>> entries_;
};

// --- evaluation --------------------------------------------------------------

inline Value eval_data(const Expr& e, const Env& env, const SortTable& sorts) {
    switch (e.op) {
        case ExOp::Const: return e.cval;
        case ExOp::Var: {
            const Value* v = env.find(e.var);
            if (!v) throw spec_error("unbound variable '" + e.var + "' at evaluation", e.line, e.col);
            return *v;
        }
        case ExOp::Eq:
        case ExOp::Ne: {
            Value a = eval_data(*e.kids[0], env, sorts);
            Value b = eval_data(*e.kids[1], env, sorts);
            if (a.is_undef() || b.is_undef()) return Value::boolean(false);
            return Value::boolean((e.op == ExOp::Eq) == (a == b));
        }
        case ExOp::Lt:
        case ExOp::Le:
        case ExOp::Gt:
        case ExOp::Ge: {
            Value a = eval_data(*e.kids[0], env, sorts);
            Value b = eval_data(*e.kids[1], env, sorts);
            if (a.is_undef() || b.is_undef()) return Value::boolean(false);
            switch (e.op) {
                case ExOp::Lt: return Value::boolean(a.num < b.num);
                case ExOp::Le: return Value::boolean(a.num <= b.num);
                case ExOp::Gt: return Value::boolean(a.num > b.num);
                default: return Value::boolean(a.num >= b.num);
            }
        }
        case ExOp::Add:
        case ExOp::Sub:
        case ExOp::Mul:
        case ExOp::Mod: {
            Value a = eval_data(*e.kids[0], env, sorts);
            Value b = eval_data(*e.kids[1], env, sorts);
            if (a.is_undef() || b.is_undef()) return Value::undef();
            switch (e.op) {
                case ExOp::Add: return Value::integer(a.num + b.num);
                case ExOp::Sub: return Value::integer(a.num - b.num);
                case ExOp::Mul: return Value::integer(a.num * b.num);
                default:
                    if (b.num <= 0) return Value::undef();
                    return Value::integer(((a.num % b.num) + b.num) % b.num);
            }
        }
        case ExOp::And: {
            Value a = eval_data(*e.kids[0], env, sorts);
            if (!a.as_bool()) return Value::boolean(false);
            return eval_data(*e.kids[1], env, sorts);
        }
        case ExOp::Or: {
            Value a = eval_data(*e.kids[0], env, sorts);
            if (a.as_bool()) return Value::boolean(true);
            return eval_data(*e.kids[1], env, sorts);
        }
        case ExOp::Not: return Value::boolean(!eval_data(*e.kids[0], env, sorts).as_bool());
        case ExOp::Imp: {
            Value a = eval_data(*e.kids[0], env, sorts);
            if (!a.as_bool()) return Value::boolean(true);
            return eval_data(*e.kids[1], env, sorts);
        }
        case ExOp::Ite: {
            Value c = eval_data(*e.kids[0], env, sorts);
            return eval_data(c.as_bool() ? *e.kids[1] : *e.kids[2], env, sorts);
        }
        case ExOp::Head: {
            Value l = eval_data(*e.kids[0], env, sorts);
            if (l.is_undef() || l.list->empty()) return Value::undef();
            return (*l.list)[0];
        }
        case ExOp::Tail: {
            Value l = eval_data(*e.kids[0], env, sorts);
            if (l.is_undef() || l.list->empty()) return Value::undef();
            return Value::make_list({l.list->begin() + 1, l.list->end()});
        }
        case ExOp::Append: {
            Value l = eval_data(*e.kids[0], env, sorts);
            Value x = eval_data(*e.kids[1], env, sorts);
            if (l.is_undef() || x.is_undef()) return Value::undef();
            if (e.kids[0]->type.kind == ExType::Ref &&
                int(l.list->size()) >= sorts.sort(e.kids[0]->type.sort).max_len)
                return Value::undef();
            std::vector<Value> out(*l.list);
            out.push_back(x);
            return Value::make_list(std::move(out));
        }
        case ExOp::Len: {
            Value l = eval_data(*e.kids[0], env, sorts);
            if (l.is_undef()) return Value::undef();
            return Value::integer(int64_t(l.list->size()));
        }
    }
    return Value::undef();
}

// --- substitution and free variables ----------------------------------------

inline void free_vars(const Expr& e, std::vector<std::string>& out) {
    if (e.op == ExOp::Var) {
        for (const auto& n : out)
            if (n == e.var) return;
        out.push_back(e.var);
        return;
    }
    for (const auto& k : e.kids) free_vars(*k, out);
}

inline bool mentions(const Expr& e, const std::string& name) {
    if (e.op == ExOp::Var) return e.var == name;
    for (const auto& k : e.kids)
        if (mentions(*k, name)) return true;
    return false;
}

using ExprSubst = std::vector<std::pair<std::string, ExprPtr>>;

inline ExprPtr substitute(const ExprPtr& e, const ExprSubst& sub) {
    if (e->op == ExOp::Var) {
        for (const auto& [name, repl] : sub)
            if (name == e->var) return repl;
        return e;
    }
    if (e->kids.empty()) return e;
    bool changed = false;
    std::vector<ExprPtr> kids;
    kids.reserve(e->kids.size());
    for (const auto& k : e->kids) {
        kids.push_back(substitute(k, sub));
        changed |= kids.back() != k;
    }
    if (!changed) return e;
    auto out = std::make_shared<Expr>(*e);
    out->kids = std::move(kids);
    return out;
}

// --- printing ---------------------------------------------------------------

inline int precedence(ExOp op) {
    switch (op) {
        case ExOp::Imp: return 1;
        case ExOp::Or: return 2;
        case ExOp::And: return 3;
        case ExOp::Eq: case ExOp::Ne: case ExOp::Lt: case ExOp::Le:
        case ExOp::Gt: case ExOp::Ge: return 4;
        case ExOp::Add: case ExOp::Sub: return 5;
        case ExOp::Mul: case ExOp::Mod: return 6;
        case ExOp::Append: return 7;
        default: return 9;
    }
}

inline void print_expr(std::ostream& os, const Expr& e, const SortTable& sorts, int parent_prec = 0) {
    auto binop = [&](const char* sym) {
        int p = precedence(e.op);
        if (p <= parent_prec) os << "(";
        print_expr(os, *e.kids[0], sorts, p - 1);
        os << " " << sym << " ";
        print_expr(os, *e.kids[1], sorts, p);
        if (p <= parent_prec) os << ")";
    };
    switch (e.op) {
        case ExOp::Const: os << sorts.print(e.cval); return;
        case ExOp::Var: os << e.var; return;
        case ExOp::Eq: binop("=="); return;
        case ExOp::Ne: binop("!="); return;
        case ExOp::Lt: binop("<"); return;
        case ExOp::Le: binop("<="); return;
        case ExOp::Gt: binop(">"); return;
        case ExOp::Ge: binop(">="); return;
        case ExOp::Add: binop("+"); return;
        case ExOp::Sub: binop("-"); return;
        case ExOp::Mul: binop("*"); return;
        case ExOp::Mod: binop("mod"); return;
        case ExOp::And: binop("&&"); return;
        case ExOp::Or: binop("||"); return;
        case ExOp::Imp: binop("=>"); return;
        case ExOp::Not:
            os << "!";
            print_expr(os, *e.kids[0], sorts, 8);
            return;
        case ExOp::Ite:
            os << "if(";
            print_expr(os, *e.kids[0], sorts);
            os << ", ";
            print_expr(os, *e.kids[1], sorts);
            os << ", ";
            print_expr(os, *e.kids[2], sorts);
            os << ")";
            return;
        case ExOp::Head:
            os << "head(";
            print_expr(os, *e.kids[0], sorts);
            os << ")";
            return;
        case ExOp::Tail:
            os << "tail(";
            print_expr(os, *e.kids[0], sorts);
            os << ")";
            return;
        case ExOp::Append: binop("++"); return;
        case ExOp::Len:
            os << "#";
            print_expr(os, *e.kids[0], sorts, 8);
            return;
    }
}

inline std::string expr_to_string(const ExprPtr& e, const SortTable& sorts) {
    std::ostringstream os;
    print_expr(os, *e, sorts);
    return os.str();
}

}  // namespace sympg
