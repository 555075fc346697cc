#include "workload.hpp"

#include <charconv>
#include <sstream>

namespace wl {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

std::int64_t parse_i64(const std::string& s, int line) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw ScriptError(line, "expected integer, got '" + s + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& s, int line) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw ScriptError(line, "expected non-negative integer, got '" + s + "'");
    return v;
}

std::uint64_t parse_at_idx(const std::string& s, int line) {
    if (s.size() < 2 || s[0] != '@')
        throw ScriptError(line, "expected @<insert-index>, got '" + s + "'");
    return parse_u64(s.substr(1), line);
}

void need_arity(const std::vector<std::string>& toks, std::size_t n, int line) {
    if (toks.size() != n + 1)
        throw ScriptError(line, "'" + toks[0] + "' takes " + std::to_string(n) + " argument(s)");
}

} // namespace

Script parse(const std::string& text) {
    Script s;
    std::istringstream is(text);
    std::string line;
    int ln = 0;
    while (std::getline(is, line)) {
        ++ln;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        const std::string& w = toks[0];
        Op op;
        op.line = ln;
        if (w == "insert") {
            need_arity(toks, 1, ln);
            op.kind = OpKind::Insert;
            op.key = parse_i64(toks[1], ln);
        } else if (w == "select") {
            need_arity(toks, 1, ln);
            op.kind = OpKind::Select;
            op.rank = parse_u64(toks[1], ln);
        } else if (w == "rank") {
            need_arity(toks, 1, ln);
            op.kind = OpKind::Rank;
            op.key = parse_i64(toks[1], ln);
        } else if (w == "contains") {
            need_arity(toks, 1, ln);
            op.kind = OpKind::Contains;
            op.key = parse_i64(toks[1], ln);
        } else if (w == "succ") {
            need_arity(toks, 1, ln);
            op.kind = OpKind::Succ;
            op.key = parse_i64(toks[1], ln);
        } else if (w == "pred") {
            need_arity(toks, 1, ln);
            op.kind = OpKind::Pred;
            op.key = parse_i64(toks[1], ln);
        } else if (w == "min") {
            need_arity(toks, 0, ln);
            op.kind = OpKind::Min;
        } else if (w == "max") {
            need_arity(toks, 0, ln);
            op.kind = OpKind::Max;
        } else if (w == "pop_min") {
            need_arity(toks, 0, ln);
            op.kind = OpKind::PopMin;
        } else if (w == "pop_max") {
            need_arity(toks, 0, ln);
            op.kind = OpKind::PopMax;
        } else if (w == "delete") {
            need_arity(toks, 1, ln);
            op.kind = OpKind::Delete;
            op.idx = parse_at_idx(toks[1], ln);
        } else if (w == "change_key") {
            need_arity(toks, 2, ln);
            op.kind = OpKind::ChangeKey;
            op.idx = parse_at_idx(toks[1], ln);
            op.key = parse_i64(toks[2], ln);
        } else if (w == "split") {
            need_arity(toks, 1, ln);
            op.kind = OpKind::Split;
            op.rank = parse_u64(toks[1], ln);
        } else if (w == "merge") {
            need_arity(toks, 2, ln);
            op.kind = OpKind::Merge;
            op.a = parse_u64(toks[1], ln);
            op.b = parse_u64(toks[2], ln);
        } else if (w == "use") {
            need_arity(toks, 1, ln);
            op.kind = OpKind::Use;
            op.a = parse_u64(toks[1], ln);
        } else {
            throw ScriptError(ln, "unknown op '" + w + "'");
        }
        s.ops.push_back(op);
    }
    return s;
}

std::string to_text(const Script& s) {
    std::ostringstream os;
    for (const Op& op : s.ops) {
        switch (op.kind) {
            case OpKind::Insert: os << "insert " << op.key; break;
            case OpKind::Select: os << "select " << op.rank; break;
            case OpKind::Rank: os << "rank " << op.key; break;
            case OpKind::Contains: os << "contains " << op.key; break;
            case OpKind::Succ: os << "succ " << op.key; break;
            case OpKind::Pred: os << "pred " << op.key; break;
            case OpKind::Min: os << "min"; break;
            case OpKind::Max: os << "max"; break;
            case OpKind::PopMin: os << "pop_min"; break;
            case OpKind::PopMax: os << "pop_max"; break;
            case OpKind::Delete: os << "delete @" << op.idx; break;
            case OpKind::ChangeKey: os << "change_key @" << op.idx << " " << op.key; break;
            case OpKind::Split: os << "split " << op.rank; break;
            case OpKind::Merge: os << "merge " << op.a << " " << op.b; break;
            case OpKind::Use: os << "use " << op.a; break;
        }
        os << "\n";
    }
    return os.str();
}

Params parse_params(const std::string& csv) {
    Params out;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        std::size_t comma = csv.find(',', pos);
        std::string item = csv.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (!item.empty()) {
            std::size_t eq = item.find('=');
            if (eq == std::string::npos)
                throw std::runtime_error("bad param '" + item + "', expected K=V");
            out[item.substr(0, eq)] = item.substr(eq + 1);
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

} // namespace wl
