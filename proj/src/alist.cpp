// alist text format: standard plain-text sparse binary matrix exchange.
//
//   n m
//   max_col_weight max_row_weight
//   n column weights
//   m row weights
//   n lines of 1-based row indices per column (zero-padded or not)
//   m lines of 1-based column indices per row
//
// Weight lists may wrap across lines; adjacency is one line per node.
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mlc/ldpc.hpp"

namespace mlc {

namespace {

[[noreturn]] void fail(const std::string& path, std::size_t line, const std::string& why) {
    throw std::runtime_error("alist parse error (" + path + ":" + std::to_string(line) +
                             "): " + why);
}

struct LineReader {
    std::ifstream in;
    std::string path;
    std::size_t line_no = 0;
    std::string line;

    bool next_line() {
        while (std::getline(in, line)) {
            ++line_no;
            if (line.find_first_not_of(" \t\r\n") != std::string::npos) return true;
        }
        return false;
    }
};

std::vector<long> ints_on_line(const std::string& s) {
    std::vector<long> out;
    const char* p = s.c_str();
    char* end = nullptr;
    while (*p) {
        const long v = std::strtol(p, &end, 10);
        if (end == p) {
            while (*p == ' ' || *p == '\t' || *p == '\r') ++p;
            if (*p) return {};  // non-numeric garbage
            break;
        }
        out.push_back(v);
        p = end;
    }
    return out;
}

// Reads exactly `count` integers, taking as many lines as needed.
std::vector<long> read_ints(LineReader& r, std::size_t count, const char* what) {
    std::vector<long> out;
    while (out.size() < count) {
        if (!r.next_line()) fail(r.path, r.line_no, std::string("unexpected end of file in ") + what);
        const auto vals = ints_on_line(r.line);
        if (vals.empty()) fail(r.path, r.line_no, std::string("expected integers in ") + what);
        out.insert(out.end(), vals.begin(), vals.end());
    }
    if (out.size() > count) fail(r.path, r.line_no, std::string("too many values in ") + what);
    return out;
}

}  // namespace

LdpcCode LdpcCode::load_alist(const std::string& path) {
    LineReader r;
    r.in.open(path);
    r.path = path;
    if (!r.in) throw std::runtime_error("alist: cannot open " + path);

    if (!r.next_line()) fail(path, 1, "empty file");
    auto head = ints_on_line(r.line);
    if (head.size() != 2) fail(path, r.line_no, "expected 'n m' on the first line");
    const long n = head[0], m = head[1];
    if (n <= 0 || m <= 0) fail(path, r.line_no, "non-positive dimensions");

    if (!r.next_line()) fail(path, r.line_no, "missing max-weight line");
    auto maxw = ints_on_line(r.line);
    if (maxw.size() != 2) fail(path, r.line_no, "expected 'max_col_w max_row_w'");
    const long max_cw = maxw[0], max_rw = maxw[1];

    const auto col_w = read_ints(r, static_cast<std::size_t>(n), "column weights");
    const auto row_w = read_ints(r, static_cast<std::size_t>(m), "row weights");
    for (long i = 0; i < n; ++i) {
        if (col_w[static_cast<std::size_t>(i)] == 0)
            fail(path, r.line_no, "zero column (column " + std::to_string(i + 1) + ")");
        if (col_w[static_cast<std::size_t>(i)] < 0 || col_w[static_cast<std::size_t>(i)] > max_cw)
            fail(path, r.line_no, "column weight out of range at column " + std::to_string(i + 1));
    }
    for (long i = 0; i < m; ++i)
        if (row_w[static_cast<std::size_t>(i)] < 0 || row_w[static_cast<std::size_t>(i)] > max_rw)
            fail(path, r.line_no, "row weight out of range at row " + std::to_string(i + 1));

    std::vector<std::pair<int, int>> ones;
    ones.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(max_cw));

    for (long c = 0; c < n; ++c) {
        if (!r.next_line()) fail(path, r.line_no, "missing adjacency for column " + std::to_string(c + 1));
        auto vals = ints_on_line(r.line);
        long nonzero = 0;
        for (long v : vals) {
            if (v == 0) continue;  // padding
            if (v < 1 || v > m)
                fail(path, r.line_no, "row index out of range in column " + std::to_string(c + 1));
            ones.emplace_back(static_cast<int>(v - 1), static_cast<int>(c));
            ++nonzero;
        }
        if (nonzero != col_w[static_cast<std::size_t>(c)])
            fail(path, r.line_no,
                 "column " + std::to_string(c + 1) + " lists " + std::to_string(nonzero) +
                     " entries, weight says " + std::to_string(col_w[static_cast<std::size_t>(c)]));
    }

    // Row section: cross-check against what the columns declared.
    std::vector<std::vector<int>> from_cols(static_cast<std::size_t>(m));
    for (const auto& [row, col] : ones) from_cols[static_cast<std::size_t>(row)].push_back(col);

    for (long rw = 0; rw < m; ++rw) {
        if (!r.next_line()) fail(path, r.line_no, "missing adjacency for row " + std::to_string(rw + 1));
        auto vals = ints_on_line(r.line);
        std::vector<int> entries;
        for (long v : vals) {
            if (v == 0) continue;
            if (v < 1 || v > n)
                fail(path, r.line_no, "column index out of range in row " + std::to_string(rw + 1));
            entries.push_back(static_cast<int>(v - 1));
        }
        auto expect = from_cols[static_cast<std::size_t>(rw)];
        std::sort(expect.begin(), expect.end());
        std::sort(entries.begin(), entries.end());
        if (entries != expect)
            fail(path, r.line_no,
                 "row " + std::to_string(rw + 1) + " disagrees with the column section");
    }

    return LdpcCode(static_cast<int>(n), static_cast<int>(m), std::move(ones));
}

void LdpcCode::save_alist(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("alist: cannot write " + path);

    int max_cw = 0, max_rw = 0;
    for (int c = 0; c < n_; ++c) max_cw = std::max(max_cw, col_ptr_[c + 1] - col_ptr_[c]);
    for (int r = 0; r < m_; ++r) max_rw = std::max(max_rw, row_ptr_[r + 1] - row_ptr_[r]);

    out << n_ << " " << m_ << "\n" << max_cw << " " << max_rw << "\n";
    for (int c = 0; c < n_; ++c) out << (col_ptr_[c + 1] - col_ptr_[c]) << (c + 1 < n_ ? " " : "\n");
    for (int r = 0; r < m_; ++r) out << (row_ptr_[r + 1] - row_ptr_[r]) << (r + 1 < m_ ? " " : "\n");
    for (int c = 0; c < n_; ++c) {
        int w = 0;
        for (int e = col_ptr_[c]; e < col_ptr_[c + 1]; ++e, ++w)
            out << (col_row_[e] + 1) << (w + 1 < max_cw ? " " : "");
        for (; w < max_cw; ++w) out << "0" << (w + 1 < max_cw ? " " : "");
        out << "\n";
    }
    for (int r = 0; r < m_; ++r) {
        int w = 0;
        for (int e = row_ptr_[r]; e < row_ptr_[r + 1]; ++e, ++w)
            out << (row_col_[e] + 1) << (w + 1 < max_rw ? " " : "");
        for (; w < max_rw; ++w) out << "0" << (w + 1 < max_rw ? " " : "");
        out << "\n";
    }
}

}  // namespace mlc
