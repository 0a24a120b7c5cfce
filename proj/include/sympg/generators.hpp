#pragma once

// Benchmark model generators. Each emits a complete spec file including the
// property to check.
//
// buffer:    a FIFO with `capacity` cells over `domain_size` values; the
//            property says every value read is eventually sent.
// tictactoe: board cells b1..b9 plus the turn; one summand per position for
//            moves, one per position and player for win detection (a wins(x)
//            action is enabled at every cell of a completed line). Moves stay
//            enabled after a win; the formula checks wins at the right turns.
// four:      connect four on cols x rows; one move summand per column with
//            gravity encoded in the update, one win summand per line and
//            player. Moves stop once any line is complete, which keeps the
//            reachable space at the published scale.

#include <sstream>
#include <string>
#include <vector>

#include <sympg/values.hpp>

namespace sympg {

inline std::string gen_buffer(int capacity, int domain_size) {
    if (capacity < 1 || domain_size < 1)
        throw spec_error("buffer needs capacity >= 1 and domain >= 1");
    std::ostringstream os;
    os << "sort D = struct ";
    for (int i = 1; i <= domain_size; ++i) os << (i > 1 ? " | " : "") << "d" << i;
    os << ";\n";
    os << "sort Q = list(D, " << capacity << ");\n\n";
    os << "proc Buffer(q: Q) =\n";
    os << "    sum d: D . (#q < " << capacity << ") -> read(d) . Buffer(q ++ d)\n";
    os << "  + (q != []) -> send(head(q)) . Buffer(tail(q));\n\n";
    os << "init Buffer([]);\n\n";
    os << "form liveness =\n";
    os << "  nu Y. (forall d: D. [read(d)] mu X. (<true> true && [!send(d)] X)) && [true] Y;\n";
    return os.str();
}

namespace detail {

struct Cell {
    int c, r;
};

using Line = std::vector<Cell>;

inline std::vector<Line> board_lines(int cols, int rows, int need) {
    std::vector<Line> lines;
    auto push_if = [&](int c0, int r0, int dc, int dr) {
        Line l;
        for (int k = 0; k < need; ++k) {
            int c = c0 + k * dc, r = r0 + k * dr;
            if (c < 1 || c > cols || r < 1 || r > rows) return;
            l.push_back({c, r});
        }
        lines.push_back(std::move(l));
    };
    for (int c = 1; c <= cols; ++c) {
        for (int r = 1; r <= rows; ++r) {
            push_if(c, r, 1, 0);
            push_if(c, r, 0, 1);
            push_if(c, r, 1, 1);
            push_if(c, r, 1, -1);
        }
    }
    return lines;
}

}  // namespace detail

inline std::string gen_tictactoe() {
    std::ostringstream os;
    os << "sort Piece = struct blank | ex | oh;\n\n";
    os << "proc TicTacToe(";
    for (int k = 1; k <= 9; ++k) os << "b" << k << ": Piece, ";
    os << "p: Piece) =\n";

    auto cell = [](int c, int r) { return (r - 1) * 3 + c; };  // 1..9
    auto board_after = [&](int placed) {
        std::ostringstream b;
        for (int k = 1; k <= 9; ++k) b << (k == placed ? "p" : "b" + std::to_string(k)) << ", ";
        b << "if(p == ex, oh, ex)";
        return b.str();
    };
    auto board_same = [&] {
        std::ostringstream b;
        for (int k = 1; k <= 9; ++k) b << "b" << k << ", ";
        b << "p";
        return b.str();
    };

    bool first = true;
    for (int k = 1; k <= 9; ++k) {
        os << (first ? "    " : "  + ") << "(b" << k << " == blank) -> move(p) . TicTacToe("
           << board_after(k) << ")\n";
        first = false;
    }
    auto lines = detail::board_lines(3, 3, 3);
    for (const char* player : {"ex", "oh"}) {
        for (int k = 1; k <= 9; ++k) {
            // wins(x) is enabled at cell k when some completed line runs through it
            std::ostringstream guard;
            bool any = false;
            for (const auto& line : lines) {
                bool through = false;
                for (const auto& [c, r] : line) through |= cell(c, r) == k;
                if (!through) continue;
                guard << (any ? " || " : "") << "(";
                for (size_t i = 0; i < line.size(); ++i)
                    guard << (i ? " && " : "") << "b" << cell(line[i].c, line[i].r)
                          << " == " << player;
                guard << ")";
                any = true;
            }
            os << "  + (" << guard.str() << ") -> wins(" << player << ") . TicTacToe("
               << board_same() << ")\n";
        }
    }
    os << ";\n\ninit TicTacToe(";
    for (int k = 1; k <= 9; ++k) os << "blank, ";
    os << "ex);\n\n";
    os << "form winning = mu Z. [wins(oh)] false && <move(ex)> (<wins(ex)> true || [move(oh)] Z);\n";
    return os.str();
}

inline std::string gen_connect_four(int cols, int rows) {
    if (cols < 1 || rows < 1 || cols * rows > 42)
        throw spec_error("connect four board must satisfy 1 <= cols*rows <= 42");
    std::ostringstream os;
    os << "sort Piece = struct blank | yellow | red;\n\n";
    os << "proc Four(";
    for (int c = 1; c <= cols; ++c)
        for (int r = 1; r <= rows; ++r) os << "b" << c << "_" << r << ": Piece, ";
    os << "p: Piece) =\n";

    auto cellname = [](int c, int r) {
        return "b" + std::to_string(c) + "_" + std::to_string(r);
    };
    auto lines = detail::board_lines(cols, rows, 4);

    std::ostringstream nowin;
    if (lines.empty()) {
        nowin << "true";
    } else {
        nowin << "!(";
        bool anyl = false;
        for (const char* player : {"yellow", "red"}) {
            for (const auto& line : lines) {
                nowin << (anyl ? " || " : "") << "(";
                for (size_t i = 0; i < line.size(); ++i)
                    nowin << (i ? " && " : "") << cellname(line[i].c, line[i].r) << " == " << player;
                nowin << ")";
                anyl = true;
            }
        }
        nowin << ")";
    }

    bool first = true;
    for (int c = 1; c <= cols; ++c) {
        // drop a piece in column c: the lowest blank cell takes the player
        std::ostringstream next;
        for (int cc = 1; cc <= cols; ++cc) {
            for (int r = 1; r <= rows; ++r) {
                if (cc != c) {
                    next << cellname(cc, r) << ", ";
                } else if (r == 1) {
                    next << "if(" << cellname(c, 1) << " == blank, p, " << cellname(c, 1) << "), ";
                } else {
                    next << "if(" << cellname(c, r) << " == blank && " << cellname(c, r - 1)
                         << " != blank, p, " << cellname(c, r) << "), ";
                }
            }
        }
        next << "if(p == yellow, red, yellow)";
        os << (first ? "    " : "  + ") << "(" << cellname(c, rows) << " == blank && "
           << nowin.str() << ") -> move(p) . Four(" << next.str() << ")\n";
        first = false;
    }

    std::ostringstream same;
    for (int c = 1; c <= cols; ++c)
        for (int r = 1; r <= rows; ++r) same << cellname(c, r) << ", ";
    same << "p";
    for (const char* player : {"yellow", "red"}) {
        for (const auto& line : lines) {
            os << "  + (";
            for (size_t i = 0; i < line.size(); ++i)
                os << (i ? " && " : "") << cellname(line[i].c, line[i].r) << " == " << player;
            os << ") -> wins(" << player << ") . Four(" << same.str() << ")\n";
        }
    }
    os << ";\n\ninit Four(";
    for (int c = 1; c <= cols; ++c)
        for (int r = 1; r <= rows; ++r) os << "blank, ";
    os << "yellow);\n\n";
    os << "form winning = mu X. [wins(red)] false && <move> (<wins(yellow)> true || [move] X);\n";
    return os.str();
}

}  // namespace sympg
