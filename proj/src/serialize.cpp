#include "tt/serialize.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace tt {

namespace {

std::string half_name(int h) { return std::to_string(branch_of(h)) + "." + std::to_string(h & 1); }

std::string slot_ref(const slot& s) {
    return std::to_string(s.sw) + ":" + (s.side == 0 ? "a" : "b") + ":" + std::to_string(s.pos);
}

struct tokenizer {
    std::vector<std::pair<std::string, int>> toks;
    explicit tokenizer(const std::string& line) {
        size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && isspace((unsigned char)line[i])) ++i;
            if (i >= line.size() || line[i] == '#') break;
            size_t j = i;
            while (j < line.size() && !isspace((unsigned char)line[j])) ++j;
            toks.emplace_back(line.substr(i, j - i), (int)i + 1);
            i = j;
        }
    }
};

int to_int(const std::string& s, int ln, int col) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return isdigit((unsigned char)c); }))
        throw parse_error(ln, col, "expected a nonnegative integer, got '" + s + "'");
    return std::stoi(s);
}

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

int parse_slot(const std::string& s) {
    std::string body = (!s.empty() && s[0] == 'e') ? s.substr(1) : s;
    if (body.empty() || !std::all_of(body.begin(), body.end(), [](char c) { return isdigit((unsigned char)c); }))
        throw std::invalid_argument("bad branch slot '" + s + "'");
    return std::stoi(body);
}

std::string slot_name(int b) { return "e" + std::to_string(b); }

std::string print_track(const track& t0) {
    track t = t0;
    t.index();
    std::ostringstream os;
    os << "bigons " << (t.bigons ? 1 : 0) << "\n";
    for (int s = 0; s < t.nsw(); ++s) {
        os << "sw " << s;
        for (int k = 0; k < 2; ++k) {
            os << (k == 0 ? " a:" : " b:");
            for (size_t p = 0; p < t.sw[s][k].size(); ++p) os << (p ? "," : "") << half_name(t.sw[s][k][p]);
        }
        os << "\n";
    }
    for (int b = 0; b < t.nbr; ++b) os << "br " << b << " " << slot_ref(t.at[2 * b]) << " " << slot_ref(t.at[2 * b + 1]) << "\n";
    face_map fm = trace_regions(t);
    std::vector<int> regs;
    for (int d : t.punct) regs.push_back(fm.of_dart[d]);
    std::sort(regs.begin(), regs.end());
    for (int r : regs) os << "punct " << r << "\n";
    std::vector<int> mk = t.marks;
    std::sort(mk.begin(), mk.end());
    for (int b : mk) os << "mark " << b << "\n";
    return os.str();
}

track parse_track(const std::string& text) {
    track t;
    std::istringstream is(text);
    std::string line;
    int ln = 0;
    struct br_line {
        int ln, col;
        int id;
        std::string r0, r1;
    };
    std::vector<br_line> brs;
    std::vector<std::pair<int, int>> puncts;
    std::vector<std::pair<int, int>> positions;
    int maxh = -1;
    while (std::getline(is, line)) {
        ++ln;
        tokenizer tk(line);
        if (tk.toks.empty()) continue;
        const auto& [kw, kcol] = tk.toks[0];
        auto need = [&](size_t n) {
            if (tk.toks.size() != n) throw parse_error(ln, kcol, "'" + kw + "' expects " + std::to_string(n - 1) + " fields");
        };
        if (kw == "bigons") {
            need(2);
            t.bigons = to_int(tk.toks[1].first, ln, tk.toks[1].second) != 0;
        } else if (kw == "sw") {
            need(4);
            int id = to_int(tk.toks[1].first, ln, tk.toks[1].second);
            if (id != t.nsw()) throw parse_error(ln, tk.toks[1].second, "switch ids must be consecutive from 0");
            std::array<std::vector<int>, 2> sides;
            for (int k = 0; k < 2; ++k) {
                const auto& [tok, col] = tk.toks[2 + k];
                std::string pre = k == 0 ? "a:" : "b:";
                if (tok.rfind(pre, 0) != 0) throw parse_error(ln, col, "expected '" + pre + "'");
                std::string body = tok.substr(2);
                if (body.empty()) throw parse_error(ln, col, "empty side");
                int off = col + 2;
                for (const auto& ref : split_on(body, ',')) {
                    auto parts = split_on(ref, '.');
                    if (parts.size() != 2) throw parse_error(ln, off, "half reference must be <branch>.<end>");
                    int b = to_int(parts[0], ln, off);
                    int e = to_int(parts[1], ln, off);
                    if (e > 1) throw parse_error(ln, off, "branch end must be 0 or 1");
                    sides[k].push_back(2 * b + e);
                    maxh = std::max(maxh, 2 * b + e);
                    positions.emplace_back(ln, off);
                    off += (int)ref.size() + 1;
                }
            }
            t.sw.push_back(sides);
        } else if (kw == "br") {
            need(4);
            brs.push_back({ln, tk.toks[1].second, to_int(tk.toks[1].first, ln, tk.toks[1].second), tk.toks[2].first, tk.toks[3].first});
        } else if (kw == "punct") {
            need(2);
            puncts.emplace_back(to_int(tk.toks[1].first, ln, tk.toks[1].second), ln);
        } else if (kw == "mark") {
            need(2);
            t.marks.push_back(to_int(tk.toks[1].first, ln, tk.toks[1].second));
        } else {
            throw parse_error(ln, kcol, "unknown record '" + kw + "'");
        }
    }
    t.nbr = (maxh + 2) / 2;
    if ((int)brs.size() != t.nbr) throw parse_error(ln, 1, "expected " + std::to_string(t.nbr) + " branch records, found " + std::to_string(brs.size()));
    try {
        t.index();
    } catch (const structural_error& e) {
        throw parse_error(ln, 1, e.what());
    }
    for (size_t i = 0; i < brs.size(); ++i) {
        const auto& B = brs[i];
        if (B.id != (int)i) throw parse_error(B.ln, B.col, "branch ids must be consecutive from 0");
        if (B.r0 != slot_ref(t.at[2 * i]) || B.r1 != slot_ref(t.at[2 * i + 1]))
            throw parse_error(B.ln, B.col, "branch " + std::to_string(i) + " slots disagree with the switch records");
    }
    for (int b : t.marks)
        if (b >= t.nbr) throw parse_error(ln, 1, "mark on missing branch " + std::to_string(b));
    if (!puncts.empty()) {
        face_map fm = trace_regions(t);
        for (auto [r, pl] : puncts) {
            if (r >= (int)fm.regions.size()) throw parse_error(pl, 7, "no region " + std::to_string(r));
            t.punct.push_back(fm.regions[r].sides[0][0]);
        }
    }
    return t;
}

std::string print_weights(const weights& w) {
    std::ostringstream os;
    for (size_t b = 0; b < w.size(); ++b) {
        rat q = w[b];
        q.canonicalize();
        os << slot_name((int)b) << " " << q.get_num().get_str() << "/" << q.get_den().get_str() << "\n";
    }
    return os.str();
}

weights parse_weights(const std::string& text, int nbr) {
    weights w(nbr, rat(-1));
    std::vector<bool> got(nbr, false);
    std::istringstream is(text);
    std::string line;
    int ln = 0;
    while (std::getline(is, line)) {
        ++ln;
        tokenizer tk(line);
        if (tk.toks.empty()) continue;
        if (tk.toks.size() != 2) throw parse_error(ln, 1, "weight lines are '<slot> <num>/<den>'");
        int b;
        try {
            b = parse_slot(tk.toks[0].first);
        } catch (const std::exception& e) {
            throw parse_error(ln, tk.toks[0].second, e.what());
        }
        if (b >= nbr) throw parse_error(ln, tk.toks[0].second, "slot out of range");
        if (got[b]) throw parse_error(ln, tk.toks[0].second, "duplicate slot");
        try {
            w[b] = parse_rat(tk.toks[1].first);
        } catch (const std::exception& e) {
            throw parse_error(ln, tk.toks[1].second, e.what());
        }
        got[b] = true;
    }
    for (int b = 0; b < nbr; ++b)
        if (!got[b]) throw parse_error(ln, 1, "missing weight for " + slot_name(b));
    return w;
}

std::string read_file(const std::string& path) {
    if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    return std::string(std::istreambuf_iterator<char>(f), {});
}

}  // namespace tt
