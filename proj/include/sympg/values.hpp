#pragma once

// Finite data sorts and their values. Every sort enumerates to a fixed,
// duplicate-free value list: enums in declaration order, bounded integers
// ascending, bounded lists by length then lexicographically.

#include <cstdint>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace sympg {

class spec_error : public std::runtime_error {
public:
    spec_error(const std::string& what, int line = 0, int col = 0)
        : std::runtime_error(line ? (std::to_string(line) + ":" + std::to_string(col) + ": " + what)
                                  : what),
          line(line), col(col) {}
    int line, col;
};

enum class SortKind { Enum, Int, List };

struct Sort {
    std::string name;
    SortKind kind;
    std::vector<std::string> constants;  // Enum
    int64_t lo = 0, hi = -1;             // Int
    int elem = -1;                       // List: element sort id
    int max_len = 0;                     // List
};

struct Value {
    enum class Kind : uint8_t { Undef, Bool, Int, Enum, List };
    Kind kind = Kind::Undef;
    int64_t num = 0;  // Int value, Enum ordinal, or 0/1 for Bool
    int sort = -1;    // Enum sort id
    std::shared_ptr<const std::vector<Value>> list;

    static Value undef() { return {}; }
    static Value boolean(bool b) { return {Kind::Bool, b ? 1 : 0, -1, nullptr}; }
    static Value integer(int64_t i) { return {Kind::Int, i, -1, nullptr}; }
    static Value enumeral(int sort, int64_t ordinal) { return {Kind::Enum, ordinal, sort, nullptr}; }
    static Value make_list(std::vector<Value> elems) {
        Value v;
        v.kind = Kind::List;
        v.list = std::make_shared<const std::vector<Value>>(std::move(elems));
        return v;
    }

    bool is_undef() const { return kind == Kind::Undef; }
    bool as_bool() const { return num != 0; }

    bool operator==(const Value& o) const {
        if (kind != o.kind) return false;
        switch (kind) {
            case Kind::Undef: return true;
            case Kind::Bool:
            case Kind::Int: return num == o.num;
            case Kind::Enum: return sort == o.sort && num == o.num;
            case Kind::List: {
                if (list->size() != o.list->size()) return false;
                for (size_t i = 0; i < list->size(); ++i)
                    if (!((*list)[i] == (*o.list)[i])) return false;
                return true;
            }
        }
        return false;
    }
    bool operator!=(const Value& o) const { return !(*this == o); }
};

class SortTable {
public:
    int add_enum(const std::string& name, std::vector<std::string> constants) {
        int id = reserve(name);
        Sort& s = sorts_[id];
        s.kind = SortKind::Enum;
        s.constants = std::move(constants);
        for (size_t i = 0; i < s.constants.size(); ++i) {
            if (!constant_index_.emplace(s.constants[i], std::pair<int, int64_t>{id, int64_t(i)}).second)
                throw spec_error("duplicate enum constant '" + s.constants[i] + "'");
        }
        if (s.constants.empty()) throw spec_error("enum sort '" + name + "' has no constants");
        return id;
    }

    int add_int(const std::string& name, int64_t lo, int64_t hi) {
        if (lo > hi) throw spec_error("empty integer range in sort '" + name + "'");
        int id = reserve(name);
        sorts_[id].kind = SortKind::Int;
        sorts_[id].lo = lo;
        sorts_[id].hi = hi;
        return id;
    }

    int add_list(const std::string& name, int elem_sort, int max_len) {
        if (max_len < 0) throw spec_error("negative list bound in sort '" + name + "'");
        int id = reserve(name);
        sorts_[id].kind = SortKind::List;
        sorts_[id].elem = elem_sort;
        sorts_[id].max_len = max_len;
        return id;
    }

    const Sort& sort(int id) const { return sorts_[size_t(id)]; }
    size_t size() const { return sorts_.size(); }

    int lookup(const std::string& name) const {
        auto it = by_name_.find(name);
        return it == by_name_.end() ? -1 : it->second;
    }

    // (sort id, ordinal) of an enum constant, or (-1,_) if unknown.
    std::pair<int, int64_t> constant(const std::string& name) const {
        auto it = constant_index_.find(name);
        return it == constant_index_.end() ? std::pair<int, int64_t>{-1, 0} : it->second;
    }

    std::vector<Value> enumerate(int id) const {
        const Sort& s = sort(id);
        std::vector<Value> out;
        switch (s.kind) {
            case SortKind::Enum:
                for (size_t i = 0; i < s.constants.size(); ++i)
                    out.push_back(Value::enumeral(id, int64_t(i)));
                break;
            case SortKind::Int:
                for (int64_t v = s.lo; v <= s.hi; ++v) out.push_back(Value::integer(v));
                break;
            case SortKind::List: {
                auto elems = enumerate(s.elem);
                std::vector<std::vector<Value>> layer{{}};
                out.push_back(Value::make_list({}));
                for (int len = 1; len <= s.max_len; ++len) {
                    std::vector<std::vector<Value>> next;
                    for (const auto& prefix : layer) {
                        for (const auto& e : elems) {
                            auto l = prefix;
                            l.push_back(e);
                            out.push_back(Value::make_list(l));
                            next.push_back(std::move(l));
                        }
                    }
                    layer = std::move(next);
                }
                break;
            }
        }
        return out;
    }

    bool valid(int sort_id, const Value& v) const {
        const Sort& s = sort(sort_id);
        switch (s.kind) {
            case SortKind::Enum:
                return v.kind == Value::Kind::Enum && v.sort == sort_id &&
                       v.num >= 0 && size_t(v.num) < s.constants.size();
            case SortKind::Int:
                return v.kind == Value::Kind::Int && v.num >= s.lo && v.num <= s.hi;
            case SortKind::List: {
                if (v.kind != Value::Kind::List || int(v.list->size()) > s.max_len) return false;
                for (const auto& e : *v.list)
                    if (!valid(s.elem, e)) return false;
                return true;
            }
        }
        return false;
    }

    std::string print(const Value& v) const {
        switch (v.kind) {
            case Value::Kind::Undef: return "<undef>";
            case Value::Kind::Bool: return v.num ? "true" : "false";
            case Value::Kind::Int: return std::to_string(v.num);
            case Value::Kind::Enum: return sort(v.sort).constants[size_t(v.num)];
            case Value::Kind::List: {
                std::ostringstream os;
                os << "[";
                for (size_t i = 0; i < v.list->size(); ++i)
                    os << (i ? "," : "") << print((*v.list)[i]);
                os << "]";
                return os.str();
            }
        }
        return "?";
    }

private:
    int reserve(const std::string& name) {
        if (by_name_.count(name)) throw spec_error("duplicate sort '" + name + "'");
        int id = int(sorts_.size());
        sorts_.push_back(Sort{name, SortKind::Enum, {}, 0, -1, -1, 0});
        by_name_.emplace(name, id);
        return id;
    }

    std::vector<Sort> sorts_;
    std::unordered_map<std::string, int> by_name_;
    std::unordered_map<std::string, std::pair<int, int64_t>> constant_index_;
};

}  // namespace sympg
