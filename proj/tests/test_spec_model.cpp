#include <catch2/catch_amalgamated.hpp>

#include <sympg/generators.hpp>
#include <sympg/parser.hpp>

using namespace sympg;

TEST_CASE("sort enumeration orders and sizes") {
    SortTable st;
    int d = st.add_enum("D", {"d1", "d2"});
    int n = st.add_int("N", 0, 2);
    int q = st.add_list("Q", d, 2);

    auto dv = st.enumerate(d);
    REQUIRE(dv.size() == 2);
    REQUIRE(st.print(dv[0]) == "d1");
    REQUIRE(st.print(dv[1]) == "d2");

    auto nv = st.enumerate(n);
    REQUIRE(nv.size() == 3);
    REQUIRE(nv[0].num == 0);
    REQUIRE(nv[2].num == 2);

    auto qv = st.enumerate(q);
    REQUIRE(qv.size() == 7);  // 1 + 2 + 4
    REQUIRE(st.print(qv[0]) == "[]");
    REQUIRE(st.print(qv[1]) == "[d1]");
    REQUIRE(st.print(qv[2]) == "[d2]");
    REQUIRE(st.print(qv[3]) == "[d1,d1]");
    REQUIRE(st.print(qv[6]) == "[d2,d2]");

    // enumeration is duplicate-free
    for (size_t i = 0; i < qv.size(); ++i)
        for (size_t j = i + 1; j < qv.size(); ++j) REQUIRE(qv[i] != qv[j]);
}

TEST_CASE("bounded list size law") {
    SortTable st;
    int d = st.add_enum("D", {"a", "b", "c"});
    int q = st.add_list("Q", d, 3);
    // sum_{j=0..3} 3^j = 40
    REQUIRE(st.enumerate(q).size() == 40);
}

TEST_CASE("eval_data over the buffer expressions") {
    auto spec = parse_spec(gen_buffer(2, 2));
    const SortTable& st = *spec.sorts;
    int dsort = st.lookup("D");
    int qsort = st.lookup("Q");
    REQUIRE(dsort >= 0);
    REQUIRE(qsort >= 0);

    // guard of the read summand: #q < 2
    const Summand& read = spec.proc.summands[0];
    Env env;
    env.push("q", Value::make_list({Value::enumeral(dsort, 0)}));
    REQUIRE(eval_data(*read.guard, env, st).as_bool());

    Env full;
    full.push("q", Value::make_list({Value::enumeral(dsort, 0), Value::enumeral(dsort, 0)}));
    REQUIRE(!eval_data(*read.guard, full, st).as_bool());

    // head/tail totality on the empty list
    const Summand& send = spec.proc.summands[1];
    Env empty;
    empty.push("q", Value::make_list({}));
    REQUIRE(!eval_data(*send.guard, empty, st).as_bool());
    Value h = eval_data(*send.action_args[0], empty, st);
    REQUIRE(h.is_undef());

    // append within bounds
    Env one;
    one.push("q", Value::make_list({Value::enumeral(dsort, 1)}));
    one.push("d", Value::enumeral(dsort, 0));
    Value appended = eval_data(*read.next_state[0], one, st);
    REQUIRE(st.print(appended) == "[d2,d1]");
    // and beyond bounds: undefined
    Env two;
    two.push("q", Value::make_list({Value::enumeral(dsort, 0), Value::enumeral(dsort, 0)}));
    two.push("d", Value::enumeral(dsort, 0));
    REQUIRE(eval_data(*read.next_state[0], two, st).is_undef());
}

TEST_CASE("determinism of evaluation") {
    auto spec = parse_spec(gen_buffer(2, 2));
    Env env;
    env.push("q", Value::make_list({}));
    Value a = eval_data(*spec.proc.summands[0].guard, env, *spec.sorts);
    Value b = eval_data(*spec.proc.summands[0].guard, env, *spec.sorts);
    REQUIRE(a == b);
}

TEST_CASE("buffer spec parses to Example 1 shape") {
    auto spec = parse_spec(gen_buffer(2, 2));
    REQUIRE(spec.proc.name == "Buffer");
    REQUIRE(spec.proc.summands.size() == 2);
    REQUIRE(spec.proc.summands[0].action == "read");
    REQUIRE(spec.proc.summands[0].sum_vars.size() == 1);
    REQUIRE(spec.proc.summands[1].action == "send");
    REQUIRE(spec.proc.summands[1].sum_vars.empty());
    REQUIRE(spec.proc.init.size() == 1);
    REQUIRE(spec.formulas.size() == 1);
    REQUIRE(spec.formulas[0].first == "liveness");
    REQUIRE(spec.formulas[0].second->kind == MuForm::Fix);
    REQUIRE(spec.formulas[0].second->sigma == FixOp::Nu);
}

TEST_CASE("parse errors carry positions and reasons") {
    REQUIRE_THROWS_AS(parse_spec("sort D = struct a | a;\nproc P() = true -> t . P();\ninit P();"),
                      spec_error);
    REQUIRE_THROWS_AS(parse_spec("proc P() = true -> t . Q();\ninit P();"), spec_error);
    // unbound variable
    REQUIRE_THROWS_AS(parse_spec("proc P() = (x == 1) -> t . P();\ninit P();"), spec_error);
    // missing init
    REQUIRE_THROWS_AS(parse_spec("proc P() = true -> t . P();"), spec_error);
}

TEST_CASE("negation on a propositional variable is rejected") {
    std::string text =
        "proc P() = true -> t . P();\n"
        "init P();\n"
        "form bad = mu X. !X;\n";
    try {
        parse_spec(text);
        FAIL("expected positivity error");
    } catch (const spec_error& e) {
        REQUIRE(std::string(e.what()).find("negation") != std::string::npos);
    }
}

TEST_CASE("round-trip parse . print . parse is stable") {
    for (const std::string& text :
         {gen_buffer(2, 2), gen_buffer(3, 2), gen_tictactoe(), gen_connect_four(4, 4)}) {
        auto spec1 = parse_spec(text);
        std::string printed1 = print_spec(spec1);
        auto spec2 = parse_spec(printed1);
        std::string printed2 = print_spec(spec2);
        REQUIRE(printed1 == printed2);
    }
}

TEST_CASE("match_action semantics") {
    auto spec = parse_spec(gen_buffer(2, 2));
    const SortTable& st = *spec.sorts;
    int dsort = st.lookup("D");
    Value d1 = Value::enumeral(dsort, 0);
    Value d2 = Value::enumeral(dsort, 1);

    // alpha = !send(d) with d = d1
    auto send_pat = mk_act_match("send", false, {std::optional<ExprPtr>(mk_var("d", ExType::ref(dsort)))});
    auto alpha = mk_act(ActForm::Not, send_pat);
    Env env;
    env.push("d", d1);
    REQUIRE(match_action(*alpha, "read", {d1}, env, st));       // different name
    REQUIRE(!match_action(*send_pat, "read", {d1}, env, st));
    REQUIRE(match_action(*send_pat, "send", {d1}, env, st));
    REQUIRE(!match_action(*send_pat, "send", {d2}, env, st));
    REQUIRE(match_action(*mk_act(ActForm::True), "anything", {}, env, st));

    // negation is complement for closed formulas
    for (const auto& args : {std::vector<Value>{d1}, std::vector<Value>{d2}}) {
        REQUIRE(match_action(*alpha, "send", args, env, st) !=
                match_action(*send_pat, "send", args, env, st));
    }

    // arity mismatch is an error
    REQUIRE_THROWS_AS(match_action(*send_pat, "send", {d1, d2}, env, st), spec_error);

    // wildcard
    auto wild = mk_act_match("send", false, {std::nullopt});
    REQUIRE(match_action(*wild, "send", {d2}, env, st));
}

TEST_CASE("tictactoe generator shape") {
    auto spec = parse_spec(gen_tictactoe());
    REQUIRE(spec.proc.params.size() == 10);  // b1..b9 and p
    REQUIRE(spec.proc.summands.size() == 27);  // 9 moves, 9 wins(ex), 9 wins(oh)
    int moves = 0;
    for (const auto& s : spec.proc.summands)
        if (s.action == "move") ++moves;
    REQUIRE(moves == 9);
}

TEST_CASE("connect four generator shape") {
    auto spec = parse_spec(gen_connect_four(4, 4));
    REQUIRE(spec.proc.params.size() == 17);  // 16 cells and p
    int moves = 0, wins = 0;
    for (const auto& s : spec.proc.summands) {
        if (s.action == "move") ++moves;
        if (s.action == "wins") ++wins;
    }
    REQUIRE(moves == 4);
    REQUIRE(wins == 20);  // 10 lines x 2 players
    REQUIRE_THROWS_AS(gen_connect_four(7, 7), spec_error);
    REQUIRE_THROWS_AS(gen_connect_four(0, 4), spec_error);
}
