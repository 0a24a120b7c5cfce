#pragma once

// Parser for the toolkit's spec files. A file holds sort declarations, one
// linear process, an init clause and named formulae:
//
//   sort D = struct d1 | d2;
//   sort Q = list(D, 2);
//   proc Buffer(q: Q) =
//       sum d: D . (#q < 2) -> read(d) . Buffer(q ++ d)
//     + (q != []) -> send(head(q)) . Buffer(tail(q));
//   init Buffer([]);
//   form liveness = nu Y. (forall d: D. [read(d)] mu X. (<true> true && [!send(d)] X)) && [true] Y;
//
// Comments run from '%' or '//' to end of line. See docs/grammar.md.

#include <memory>
#include <string>
#include <unordered_set>
#include <vector>

#include <sympg/process.hpp>

namespace sympg {

struct SpecFile {
    std::shared_ptr<SortTable> sorts;
    LinearProcess proc;
    std::vector<std::pair<std::string, MuFormPtr>> formulas;

    const MuFormPtr& formula(const std::string& name) const {
        for (const auto& [n, f] : formulas)
            if (n == name) return f;
        throw spec_error("no formula named '" + name + "'");
    }
};

namespace detail {

struct Token {
    enum Type { Ident, Number, Punct, End } type;
    std::string text;
    int64_t num = 0;
    int line = 1, col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : src_(text) { scan(); }
    const std::vector<Token>& tokens() const { return toks_; }

private:
    void scan() {
        int line = 1, col = 1;
        size_t i = 0;
        auto step = [&](size_t n) {
            for (size_t k = 0; k < n; ++k) {
                if (src_[i + k] == '\n') { ++line; col = 1; }
                else ++col;
            }
            i += n;
        };
        while (i < src_.size()) {
            char c = src_[i];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') { step(1); continue; }
            if (c == '%' || (c == '/' && i + 1 < src_.size() && src_[i + 1] == '/')) {
                while (i < src_.size() && src_[i] != '\n') step(1);
                continue;
            }
            Token t;
            t.line = line;
            t.col = col;
            if (isalpha(c) || c == '_') {
                size_t j = i;
                while (j < src_.size() && (isalnum(src_[j]) || src_[j] == '_' || src_[j] == '\'')) ++j;
                t.type = Token::Ident;
                t.text = src_.substr(i, j - i);
                step(j - i);
            } else if (isdigit(c)) {
                size_t j = i;
                while (j < src_.size() && isdigit(src_[j])) ++j;
                t.type = Token::Number;
                t.text = src_.substr(i, j - i);
                t.num = std::stoll(t.text);
                step(j - i);
            } else {
                static const char* two[] = {"==", "!=", "<=", ">=", "&&", "||",
                                            "=>", "->", "++", "..", ":="};
                t.type = Token::Punct;
                t.text = std::string(1, c);
                for (const char* op : two) {
                    if (src_.compare(i, 2, op) == 0) { t.text = op; break; }
                }
                step(t.text.size());
            }
            toks_.push_back(std::move(t));
        }
        toks_.push_back(Token{Token::End, "", 0, line, col});
    }

    const std::string& src_;
    std::vector<Token> toks_;
};

}  // namespace detail

class Parser {
public:
    static SpecFile parse(const std::string& text) {
        Parser p(text);
        p.run();
        return std::move(p.out_);
    }

private:
    explicit Parser(const std::string& text) : lex_(text), toks_(lex_.tokens()) {
        out_.sorts = std::make_shared<SortTable>();
    }

    // --- token plumbing -------------------------------------------------------

    const detail::Token& peek(size_t ahead = 0) const {
        size_t i = pos_ + ahead;
        return i < toks_.size() ? toks_[i] : toks_.back();
    }
    const detail::Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
    bool at(const std::string& text) const {
        return peek().type != detail::Token::Number && peek().text == text;
    }
    bool accept(const std::string& text) {
        if (!at(text)) return false;
        ++pos_;
        return true;
    }
    void expect(const std::string& text) {
        if (!accept(text)) fail("expected '" + text + "', found '" + describe(peek()) + "'");
    }
    std::string expect_ident() {
        if (peek().type != detail::Token::Ident) fail("expected identifier, found '" + describe(peek()) + "'");
        return next().text;
    }
    int64_t expect_number() {
        bool neg = accept("-");
        if (peek().type != detail::Token::Number) fail("expected number, found '" + describe(peek()) + "'");
        int64_t n = next().num;
        return neg ? -n : n;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw spec_error(msg, peek().line, peek().col);
    }
    static std::string describe(const detail::Token& t) {
        return t.type == detail::Token::End ? "end of input" : t.text;
    }

    // --- scopes ---------------------------------------------------------------

    struct ScopeEntry {
        std::string name;
        ExType type;
    };

    ExType* lookup(const std::string& name) {
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
            if (it->name == name) return &it->type;
        return nullptr;
    }

    // --- top level --------------------------------------------------------------

    void run() {
        bool have_proc = false, have_init = false;
        while (peek().type != detail::Token::End) {
            if (at("sort")) parse_sort();
            else if (at("proc")) { parse_proc(); have_proc = true; }
            else if (at("init")) { parse_init(); have_init = true; }
            else if (at("form")) parse_form();
            else fail("expected 'sort', 'proc', 'init' or 'form'");
        }
        if (!have_proc) throw spec_error("missing proc declaration");
        if (!have_init) throw spec_error("missing init declaration");
    }

    void parse_sort() {
        expect("sort");
        std::string name = expect_ident();
        expect("=");
        if (accept("struct")) {
            std::vector<std::string> consts{expect_ident()};
            while (accept("|")) consts.push_back(expect_ident());
            out_.sorts->add_enum(name, std::move(consts));
        } else if (accept("int")) {
            expect("(");
            int64_t lo = expect_number();
            expect("..");
            int64_t hi = expect_number();
            expect(")");
            out_.sorts->add_int(name, lo, hi);
        } else if (accept("list")) {
            expect("(");
            int elem = sort_ref();
            expect(",");
            int64_t maxlen = expect_number();
            expect(")");
            out_.sorts->add_list(name, elem, int(maxlen));
        } else {
            fail("expected 'struct', 'int' or 'list'");
        }
        expect(";");
    }

    int sort_ref() {
        const auto& t = peek();
        std::string name = expect_ident();
        int id = out_.sorts->lookup(name);
        if (id < 0) throw spec_error("unknown sort '" + name + "'", t.line, t.col);
        return id;
    }

    std::vector<Param> parse_params() {
        std::vector<Param> ps;
        do {
            std::string name = expect_ident();
            expect(":");
            ps.push_back(Param{name, sort_ref()});
        } while (accept(","));
        return ps;
    }

    void parse_proc() {
        expect("proc");
        out_.proc.name = expect_ident();
        expect("(");
        if (!at(")")) out_.proc.params = parse_params();
        expect(")");
        for (const auto& p : out_.proc.params)
            scope_.push_back({p.name, type_of_sort(p.sort)});
        expect("=");
        do {
            out_.proc.summands.push_back(parse_summand());
        } while (accept("+"));
        expect(";");
        scope_.clear();
    }

    Summand parse_summand() {
        Summand s;
        s.line = peek().line;
        size_t mark = scope_.size();
        if (at("sum")) {
            // lookahead: 'sum' could in principle be a variable; our keyword wins
            next();
            s.sum_vars = parse_params();
            for (const auto& p : s.sum_vars) {
                if (lookup_is_param(p.name))
                    fail("sum variable '" + p.name + "' shadows a process parameter");
                scope_.push_back({p.name, type_of_sort(p.sort)});
            }
            expect(".");
        }
        s.guard = parse_expr();
        require_bool(s.guard);
        expect("->");
        s.action = expect_ident();
        if (accept("(")) {
            if (!at(")")) {
                do s.action_args.push_back(parse_expr());
                while (accept(","));
            }
            expect(")");
        }
        expect(".");
        std::string target = expect_ident();
        if (target != out_.proc.name)
            fail("summand must recurse into '" + out_.proc.name + "'");
        expect("(");
        if (!at(")")) {
            do s.next_state.push_back(parse_expr());
            while (accept(","));
        }
        expect(")");
        if (s.next_state.size() != out_.proc.params.size())
            fail("next state has " + std::to_string(s.next_state.size()) + " expressions, process has " +
                 std::to_string(out_.proc.params.size()) + " parameters");
        for (size_t i = 0; i < s.next_state.size(); ++i)
            require_sort(s.next_state[i], out_.proc.params[i].sort);
        scope_.resize(mark);
        return s;
    }

    void parse_init() {
        expect("init");
        std::string name = expect_ident();
        if (name != out_.proc.name) fail("init must name process '" + out_.proc.name + "'");
        expect("(");
        if (!at(")")) {
            do out_.proc.init.push_back(parse_expr());
            while (accept(","));
        }
        expect(")");
        expect(";");
        if (out_.proc.init.size() != out_.proc.params.size())
            throw spec_error("init has " + std::to_string(out_.proc.init.size()) +
                             " values, process has " + std::to_string(out_.proc.params.size()) +
                             " parameters");
        for (size_t i = 0; i < out_.proc.init.size(); ++i)
            require_sort(out_.proc.init[i], out_.proc.params[i].sort);
    }

    void parse_form() {
        expect("form");
        std::string name = expect_ident();
        expect("=");
        bound_propvars_.clear();
        all_binders_.clear();
        MuFormPtr f = parse_formula();
        expect(";");
        out_.formulas.emplace_back(name, std::move(f));
    }

    // --- data expressions --------------------------------------------------------

    // min_level: 1 full grammar; 4 stops below &&/||/=> (formula atoms).
    ExprPtr parse_expr(int min_level = 1) {
        return parse_binary(min_level, min_level);
    }

    ExprPtr parse_binary(int level, int min_level) {
        if (level > 7) return parse_unary(min_level);
        ExprPtr lhs = parse_binary(level + 1, min_level);
        for (;;) {
            ExOp op;
            if (level == 1 && at("=>")) op = ExOp::Imp;
            else if (level == 2 && at("||")) op = ExOp::Or;
            else if (level == 3 && at("&&")) op = ExOp::And;
            else if (level == 4 && at("==")) op = ExOp::Eq;
            else if (level == 4 && at("!=")) op = ExOp::Ne;
            else if (level == 4 && at("<")) op = ExOp::Lt;
            else if (level == 4 && at("<=")) op = ExOp::Le;
            else if (level == 4 && at(">")) op = ExOp::Gt;
            else if (level == 4 && at(">=")) op = ExOp::Ge;
            else if (level == 5 && at("+")) op = ExOp::Add;
            else if (level == 5 && at("-")) op = ExOp::Sub;
            else if (level == 6 && at("*")) op = ExOp::Mul;
            else if (level == 6 && at("mod")) op = ExOp::Mod;
            else if (level == 7 && at("++")) op = ExOp::Append;
            else break;
            const auto& t = next();
            ExprPtr rhs = parse_binary(op == ExOp::Imp ? level : level + 1, min_level);
            lhs = typecheck_binop(op, lhs, rhs, t.line, t.col);
            if (level == 4) break;  // comparisons are non-associative
        }
        return lhs;
    }

    ExprPtr parse_unary(int min_level) {
        const auto& t = peek();
        if (accept("!")) {
            ExprPtr e = parse_unary(min_level);
            require_bool(e);
            return mk_not(e);
        }
        if (accept("#")) {
            ExprPtr e = parse_unary(min_level);
            require_list(e, t);
            return mk_op(ExOp::Len, {e}, ExType::int_any());
        }
        return parse_primary(min_level);
    }

    ExprPtr parse_primary(int min_level) {
        const auto& t = peek();
        if (t.type == detail::Token::Number) {
            next();
            return mk_const(Value::integer(t.num), ExType::int_any());
        }
        if (accept("-")) {
            if (peek().type != detail::Token::Number) fail("expected number after '-'");
            int64_t n = next().num;
            return mk_const(Value::integer(-n), ExType::int_any());
        }
        if (accept("(")) {
            ExprPtr e = parse_expr(1);
            expect(")");
            return e;
        }
        if (accept("[")) {
            expect("]");
            return mk_const(Value::make_list({}), ExType::nil());
        }
        if (at("true") || at("false")) {
            bool b = at("true");
            next();
            return mk_const(Value::boolean(b), ExType::boolean());
        }
        if (at("if")) {
            next();
            expect("(");
            ExprPtr c = parse_expr(1);
            require_bool(c);
            expect(",");
            ExprPtr a = parse_expr(1);
            expect(",");
            ExprPtr b = parse_expr(1);
            expect(")");
            ExType ty = unify(a->type, b->type, t);
            return mk_op(ExOp::Ite, {c, a, b}, ty);
        }
        if (at("head") || at("tail")) {
            bool is_head = at("head");
            next();
            expect("(");
            ExprPtr l = parse_expr(1);
            expect(")");
            require_list(l, t);
            const Sort& s = out_.sorts->sort(l->type.sort);
            return mk_op(is_head ? ExOp::Head : ExOp::Tail, {l},
                         is_head ? type_of_sort(s.elem) : l->type);
        }
        if (t.type == detail::Token::Ident) {
            std::string name = next().text;
            if (ExType* ty = lookup(name)) {
                auto e = mk_var(name, *ty);
                const_cast<Expr&>(*e).line = t.line;
                const_cast<Expr&>(*e).col = t.col;
                return e;
            }
            auto [sid, ord] = out_.sorts->constant(name);
            if (sid >= 0) return mk_const(Value::enumeral(sid, ord), ExType::ref(sid));
            throw spec_error("unbound identifier '" + name + "'", t.line, t.col);
        }
        fail("expected expression, found '" + describe(t) + "'");
    }

    // --- typing helpers ------------------------------------------------------------

    ExType type_of_sort(int sort_id) const {
        return ExType::ref(sort_id);
    }

    bool lookup_is_param(const std::string& name) const {
        for (const auto& p : out_.proc.params)
            if (p.name == name) return true;
        return false;
    }

    bool int_like(const ExType& t) const {
        return t.kind == ExType::IntAny ||
               (t.kind == ExType::Ref && out_.sorts->sort(t.sort).kind == SortKind::Int);
    }
    bool list_like(const ExType& t) const {
        return t.kind == ExType::Ref && out_.sorts->sort(t.sort).kind == SortKind::List;
    }

    bool compatible(const ExType& a, const ExType& b) const {
        if (a.kind == ExType::Bool || b.kind == ExType::Bool)
            return a.kind == ExType::Bool && b.kind == ExType::Bool;
        if (int_like(a) && int_like(b)) return true;
        if (a.kind == ExType::NilList) return b.kind == ExType::NilList || list_like(b);
        if (b.kind == ExType::NilList) return list_like(a);
        return a.kind == ExType::Ref && b.kind == ExType::Ref && a.sort == b.sort;
    }

    ExType unify(const ExType& a, const ExType& b, const detail::Token& t) const {
        if (!compatible(a, b))
            throw spec_error("type mismatch", t.line, t.col);
        if (a.kind == ExType::NilList) return b;
        return a;
    }

    void require_bool(const ExprPtr& e) const {
        if (e->type.kind != ExType::Bool) throw spec_error("boolean expression required");
    }
    void require_list(const ExprPtr& e, const detail::Token& t) const {
        if (!list_like(e->type))
            throw spec_error("list expression required", t.line, t.col);
    }
    void require_sort(const ExprPtr& e, int sort_id) const {
        if (!compatible(e->type, ExType::ref(sort_id)))
            throw spec_error("expression is not of sort '" + out_.sorts->sort(sort_id).name + "'");
    }

    ExprPtr typecheck_binop(ExOp op, ExprPtr a, ExprPtr b, int line, int col) {
        switch (op) {
            case ExOp::Imp:
            case ExOp::Or:
            case ExOp::And:
                require_bool(a);
                require_bool(b);
                break;
            case ExOp::Eq:
            case ExOp::Ne:
                if (!compatible(a->type, b->type)) throw spec_error("comparison of incompatible sorts", line, col);
                break;
            case ExOp::Lt:
            case ExOp::Le:
            case ExOp::Gt:
            case ExOp::Ge:
            case ExOp::Add:
            case ExOp::Sub:
            case ExOp::Mul:
            case ExOp::Mod:
                if (!int_like(a->type) || !int_like(b->type))
                    throw spec_error("integer operands required", line, col);
                break;
            case ExOp::Append: {
                if (!list_like(a->type)) throw spec_error("'++' needs a list on the left", line, col);
                int elem = out_.sorts->sort(a->type.sort).elem;
                if (!compatible(b->type, ExType::ref(elem)))
                    throw spec_error("'++' element has the wrong sort", line, col);
                break;
            }
            default: break;
        }
        ExType ty = ExType::boolean();
        if (op == ExOp::Add || op == ExOp::Sub || op == ExOp::Mul || op == ExOp::Mod)
            ty = ExType::int_any();
        if (op == ExOp::Append) ty = a->type;
        auto e = mk_op(op, {std::move(a), std::move(b)}, ty);
        const_cast<Expr&>(*e).line = line;
        const_cast<Expr&>(*e).col = col;
        return e;
    }

    // --- formulae ---------------------------------------------------------------

    MuFormPtr parse_formula() { return parse_form_imp(); }

    MuFormPtr parse_form_imp() {
        MuFormPtr lhs = parse_form_or();
        if (accept("=>")) {
            if (lhs->kind != MuForm::Simple)
                fail("left side of '=>' must be a simple formula");
            MuFormPtr rhs = parse_form_imp();
            return mk_mu_bin(MuForm::Or, mk_mu_simple(mk_not(lhs->simple)), std::move(rhs));
        }
        return lhs;
    }

    MuFormPtr parse_form_or() {
        MuFormPtr lhs = parse_form_and();
        while (accept("||")) lhs = mk_mu_bin(MuForm::Or, lhs, parse_form_and());
        return lhs;
    }

    MuFormPtr parse_form_and() {
        MuFormPtr lhs = parse_form_primary();
        while (accept("&&")) lhs = mk_mu_bin(MuForm::And, lhs, parse_form_primary());
        return lhs;
    }

    MuFormPtr parse_form_primary() {
        const auto& t = peek();
        if (accept("(")) {
            MuFormPtr f = parse_formula();
            expect(")");
            return f;
        }
        if (accept("!")) {
            MuFormPtr f = parse_form_primary();
            if (f->kind != MuForm::Simple) {
                if (f->kind == MuForm::VarRef)
                    throw spec_error("propositional variable under negation", t.line, t.col);
                throw spec_error("'!' applies to simple formulae only", t.line, t.col);
            }
            return mk_mu_simple(mk_not(f->simple));
        }
        if (accept("[")) {
            ActFormPtr a = parse_act_formula();
            expect("]");
            return mk_mu_modal(MuForm::Box, std::move(a), parse_form_primary());
        }
        if (accept("<")) {
            ActFormPtr a = parse_act_formula();
            expect(">");
            return mk_mu_modal(MuForm::Diamond, std::move(a), parse_form_primary());
        }
        if (at("forall") || at("exists")) {
            bool all = at("forall");
            next();
            auto qs = parse_params();
            size_t mark = scope_.size();
            for (const auto& p : qs) {
                check_formula_binder(p.name, t);
                scope_.push_back({p.name, type_of_sort(p.sort)});
            }
            expect(".");
            MuFormPtr body = parse_formula();
            scope_.resize(mark);
            return mk_mu_quant(all ? MuForm::Forall : MuForm::Exists, std::move(qs), std::move(body));
        }
        if (at("mu") || at("nu")) {
            FixOp sigma = at("mu") ? FixOp::Mu : FixOp::Nu;
            next();
            std::string var = expect_ident();
            if (bound_propvars_.count(var) || all_binders_.count(var))
                throw spec_error("propositional variable '" + var + "' bound twice", t.line, t.col);
            if (lookup(var) || lookup_is_param(var))
                throw spec_error("propositional variable '" + var + "' collides with a data variable",
                                 t.line, t.col);
            std::vector<std::pair<Param, ExprPtr>> fps;
            size_t mark = scope_.size();
            if (accept("(")) {
                do {
                    std::string pname = expect_ident();
                    expect(":");
                    int sid = sort_ref();
                    expect(":=");
                    ExprPtr init = parse_expr();
                    require_sort(init, sid);
                    fps.push_back({Param{pname, sid}, std::move(init)});
                } while (accept(","));
                expect(")");
                for (const auto& [p, _] : fps) {
                    check_formula_binder(p.name, t);
                    scope_.push_back({p.name, type_of_sort(p.sort)});
                }
            }
            expect(".");
            bound_propvars_.insert(var);
            all_binders_.insert(var);
            MuFormPtr body = parse_formula();
            bound_propvars_.erase(var);
            scope_.resize(mark);
            return mk_mu_fix(sigma, std::move(var), std::move(fps), std::move(body));
        }
        // identifier-led: propositional variable reference or a data atom
        if (t.type == detail::Token::Ident && bound_propvars_.count(t.text)) {
            std::string var = next().text;
            std::vector<ExprPtr> args;
            if (accept("(")) {
                if (!at(")")) {
                    do args.push_back(parse_expr());
                    while (accept(","));
                }
                expect(")");
            }
            return mk_mu_ref(std::move(var), std::move(args));
        }
        ExprPtr e = parse_expr(4);  // stop below the formula-level connectives
        require_bool(e);
        return mk_mu_simple(std::move(e));
    }

    void check_formula_binder(const std::string& name, const detail::Token& t) {
        if (lookup_is_param(name))
            throw spec_error("formula variable '" + name + "' collides with a process parameter",
                             t.line, t.col);
        if (lookup(name))
            throw spec_error("formula variable '" + name + "' shadows another variable", t.line, t.col);
        if (all_binders_.count(name))
            throw spec_error("formula variable '" + name + "' collides with a propositional variable",
                             t.line, t.col);
    }

    ActFormPtr parse_act_formula() { return parse_act_or(); }

    ActFormPtr parse_act_or() {
        ActFormPtr lhs = parse_act_and();
        while (accept("||")) lhs = mk_act(ActForm::Or, lhs, parse_act_and());
        return lhs;
    }

    ActFormPtr parse_act_and() {
        ActFormPtr lhs = parse_act_primary();
        while (accept("&&")) lhs = mk_act(ActForm::And, lhs, parse_act_primary());
        return lhs;
    }

    ActFormPtr parse_act_primary() {
        if (accept("!")) return mk_act(ActForm::Not, parse_act_primary());
        if (accept("(")) {
            ActFormPtr a = parse_act_formula();
            expect(")");
            return a;
        }
        if (at("true") || at("false")) {
            bool b = at("true");
            next();
            return mk_act(b ? ActForm::True : ActForm::False);
        }
        std::string name = expect_ident();
        if (!accept("(")) return mk_act_match(std::move(name), true);
        std::vector<std::optional<ExprPtr>> args;
        if (!at(")")) {
            do {
                if (accept("_")) args.push_back(std::nullopt);
                else args.push_back(parse_expr());
            } while (accept(","));
        }
        expect(")");
        return mk_act_match(std::move(name), false, std::move(args));
    }

    detail::Lexer lex_;
    const std::vector<detail::Token>& toks_;
    size_t pos_ = 0;
    SpecFile out_;
    std::vector<ScopeEntry> scope_;
    std::unordered_set<std::string> bound_propvars_;
    std::unordered_set<std::string> all_binders_;
};

inline SpecFile parse_spec(const std::string& text) { return Parser::parse(text); }

// --- printing -----------------------------------------------------------------

inline std::string print_spec(const SpecFile& spec) {
    const SortTable& st = *spec.sorts;
    std::ostringstream os;
    for (size_t i = 0; i < st.size(); ++i) {
        const Sort& s = st.sort(int(i));
        os << "sort " << s.name << " = ";
        switch (s.kind) {
            case SortKind::Enum:
                os << "struct ";
                for (size_t k = 0; k < s.constants.size(); ++k)
                    os << (k ? " | " : "") << s.constants[k];
                break;
            case SortKind::Int:
                os << "int(" << s.lo << ".." << s.hi << ")";
                break;
            case SortKind::List:
                os << "list(" << st.sort(s.elem).name << ", " << s.max_len << ")";
                break;
        }
        os << ";\n";
    }
    os << "\nproc " << spec.proc.name << "(";
    print_params(os, spec.proc.params, st);
    os << ") =\n";
    for (size_t i = 0; i < spec.proc.summands.size(); ++i) {
        const Summand& s = spec.proc.summands[i];
        os << (i ? "  + " : "    ");
        if (!s.sum_vars.empty()) {
            os << "sum ";
            print_params(os, s.sum_vars, st);
            os << " . ";
        }
        os << "(" << expr_to_string(s.guard, st) << ") -> " << s.action;
        if (!s.action_args.empty()) {
            os << "(";
            for (size_t k = 0; k < s.action_args.size(); ++k)
                os << (k ? ", " : "") << expr_to_string(s.action_args[k], st);
            os << ")";
        }
        os << " . " << spec.proc.name << "(";
        for (size_t k = 0; k < s.next_state.size(); ++k)
            os << (k ? ", " : "") << expr_to_string(s.next_state[k], st);
        os << ")\n";
    }
    os << ";\n\ninit " << spec.proc.name << "(";
    for (size_t k = 0; k < spec.proc.init.size(); ++k)
        os << (k ? ", " : "") << expr_to_string(spec.proc.init[k], st);
    os << ");\n";
    for (const auto& [name, f] : spec.formulas) {
        os << "\nform " << name << " = ";
        print_mu(os, *f, st);
        os << ";\n";
    }
    return os.str();
}

}  // namespace sympg
