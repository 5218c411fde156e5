#include "mlc/ldpc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_set>

#include "mlc/rng.hpp"

namespace mlc {

namespace {

// Messages from degree-1 checks pin their variable; large but finite so the
// variable-node subtraction never produces inf - inf.
constexpr double kPinned = 1e12;

// Exact sum-product pairwise combination:
// 2 atanh(tanh(a/2) tanh(b/2)) in min-sum-plus-correction form.
inline double boxplus(double a, double b) {
    const double aa = std::abs(a), ab = std::abs(b);
    const double sign = ((a < 0.0) != (b < 0.0)) ? -1.0 : 1.0;
    return sign * std::min(aa, ab) + std::log1p(std::exp(-std::abs(a + b))) -
           std::log1p(std::exp(-std::abs(a - b)));
}

}  // namespace

LdpcCode::LdpcCode(int n_cols, int n_rows, std::vector<std::pair<int, int>> ones)
    : n_(n_cols), m_(n_rows) {
    if (n_ <= 0 || m_ <= 0) throw std::invalid_argument("ldpc: non-positive dimensions");
    for (const auto& [r, c] : ones)
        if (r < 0 || r >= m_ || c < 0 || c >= n_)
            throw std::invalid_argument("ldpc: entry out of range");
    std::sort(ones.begin(), ones.end());
    for (std::size_t i = 1; i < ones.size(); ++i)
        if (ones[i] == ones[i - 1]) throw std::invalid_argument("ldpc: duplicate entry");
    build_adjacency(ones);
    for (int c = 0; c < n_; ++c)
        if (col_ptr_[c + 1] == col_ptr_[c])
            throw std::invalid_argument("ldpc: zero column " + std::to_string(c + 1));
    build_encoder();
}

void LdpcCode::build_adjacency(const std::vector<std::pair<int, int>>& ones) {
    edges_ = ones.size();
    row_ptr_.assign(m_ + 1, 0);
    col_ptr_.assign(n_ + 1, 0);
    for (const auto& [r, c] : ones) {
        ++row_ptr_[r + 1];
        ++col_ptr_[c + 1];
    }
    for (int r = 0; r < m_; ++r) row_ptr_[r + 1] += row_ptr_[r];
    for (int c = 0; c < n_; ++c) col_ptr_[c + 1] += col_ptr_[c];

    // Edge ids follow row-major order; both orientations reference them.
    row_col_.resize(edges_);
    row_edge_.resize(edges_);
    col_row_.resize(edges_);
    col_edge_.resize(edges_);
    std::vector<int> col_fill(n_, 0);
    for (std::size_t e = 0; e < edges_; ++e) {
        const auto& [r, c] = ones[e];  // row-major since `ones` is sorted
        row_col_[e] = c;
        row_edge_[e] = static_cast<int>(e);
        const int slot = col_ptr_[c] + col_fill[c]++;
        col_row_[slot] = r;
        col_edge_[slot] = static_cast<int>(e);
    }
}

bool LdpcCode::detect_staircase() const {
    if (n_ <= m_) return false;
    const int k = n_ - m_;
    for (int j = 0; j < m_; ++j) {
        const int c = k + j;
        const int deg = col_ptr_[c + 1] - col_ptr_[c];
        if (j + 1 < m_) {
            if (deg != 2 || col_row_[col_ptr_[c]] != j || col_row_[col_ptr_[c] + 1] != j + 1)
                return false;
        } else {
            if (deg != 1 || col_row_[col_ptr_[c]] != j) return false;
        }
    }
    return true;
}

void LdpcCode::build_encoder() {
    if (detect_staircase()) {
        staircase_ = true;
        k_ = n_ - m_;
        info_cols_.resize(k_);
        for (int i = 0; i < k_; ++i) info_cols_[i] = i;
        return;
    }

    constexpr int kDenseLimit = 16384;
    if (n_ > kDenseLimit)
        throw std::runtime_error(
            "ldpc: matrix too large for dense encoder preprocessing and the parity part "
            "is not staircase-structured (n = " + std::to_string(n_) + ")");

    // Dense GF(2) reduced row echelon form; determines the true rank.
    const std::size_t words = static_cast<std::size_t>((n_ + 63) / 64);
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(m_) * words, 0);
    auto row_word = [&](int r) { return rows.data() + static_cast<std::size_t>(r) * words; };
    for (int r = 0; r < m_; ++r)
        for (int e = row_ptr_[r]; e < row_ptr_[r + 1]; ++e) {
            const int c = row_col_[e];
            row_word(r)[c / 64] |= 1ull << (c % 64);
        }

    std::vector<int> pivot_row_of;  // parallel to pivot_cols_
    int rank = 0;
    for (int c = 0; c < n_ && rank < m_; ++c) {
        int pivot = -1;
        for (int r = rank; r < m_; ++r)
            if (row_word(r)[c / 64] >> (c % 64) & 1ull) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != rank)
            for (std::size_t w = 0; w < words; ++w)
                std::swap(row_word(pivot)[w], row_word(rank)[w]);
        for (int r = 0; r < m_; ++r) {
            if (r == rank) continue;
            if (row_word(r)[c / 64] >> (c % 64) & 1ull) {
                const std::uint64_t* src = row_word(rank);
                std::uint64_t* dst = row_word(r);
                for (std::size_t w = 0; w < words; ++w) dst[w] ^= src[w];
            }
        }
        pivot_cols_.push_back(c);
        pivot_row_of.push_back(rank);
        ++rank;
    }

    k_ = n_ - rank;
    std::vector<int> col_to_info(n_, -1);
    {
        std::size_t p = 0;
        for (int c = 0; c < n_; ++c) {
            if (p < pivot_cols_.size() && pivot_cols_[p] == c) {
                ++p;
                continue;
            }
            col_to_info[c] = static_cast<int>(info_cols_.size());
            info_cols_.push_back(c);
        }
    }

    // Per-pivot parity masks over the info columns: after full reduction a
    // pivot row touches only its pivot and info columns, so each parity bit
    // is an independent inner product with the info vector.
    mask_words_ = static_cast<std::size_t>((k_ + 63) / 64);
    pivot_masks_.assign(static_cast<std::size_t>(rank) * std::max<std::size_t>(mask_words_, 1), 0);
    for (int p = 0; p < rank; ++p) {
        const std::uint64_t* src = row_word(pivot_row_of[static_cast<std::size_t>(p)]);
        std::uint64_t* mask = pivot_masks_.data() + static_cast<std::size_t>(p) * mask_words_;
        for (int c = 0; c < n_; ++c) {
            if (col_to_info[c] < 0) continue;
            if (src[c / 64] >> (c % 64) & 1ull) {
                const int i = col_to_info[c];
                mask[i / 64] |= 1ull << (i % 64);
            }
        }
    }
}

std::vector<std::uint8_t> LdpcCode::encode(std::span<const std::uint8_t> info) const {
    if (info.size() != static_cast<std::size_t>(k_))
        throw std::invalid_argument("encode: expected " + std::to_string(k_) + " info bits, got " +
                                    std::to_string(info.size()));
    std::vector<std::uint8_t> code(static_cast<std::size_t>(n_), 0);

    if (staircase_) {
        for (int i = 0; i < k_; ++i) code[static_cast<std::size_t>(i)] = info[static_cast<std::size_t>(i)] & 1;
        // Row j relates parity j to parity j-1 and the row's info bits.
        for (int j = 0; j < m_; ++j) {
            std::uint8_t acc = 0;
            const int self = k_ + j;
            for (int e = row_ptr_[j]; e < row_ptr_[j + 1]; ++e) {
                const int c = row_col_[e];
                if (c != self) acc ^= code[static_cast<std::size_t>(c)];
            }
            code[static_cast<std::size_t>(self)] = acc;
        }
        return code;
    }

    std::vector<std::uint64_t> packed(std::max<std::size_t>(mask_words_, 1), 0);
    for (int i = 0; i < k_; ++i) {
        code[static_cast<std::size_t>(info_cols_[static_cast<std::size_t>(i)])] = info[static_cast<std::size_t>(i)] & 1;
        if (info[static_cast<std::size_t>(i)] & 1) packed[static_cast<std::size_t>(i / 64)] |= 1ull << (i % 64);
    }
    for (std::size_t p = 0; p < pivot_cols_.size(); ++p) {
        const std::uint64_t* mask = pivot_masks_.data() + p * mask_words_;
        int parity = 0;
        for (std::size_t w = 0; w < mask_words_; ++w)
            parity ^= static_cast<int>(std::popcount(mask[w] & packed[w]) & 1u);
        code[static_cast<std::size_t>(pivot_cols_[p])] = static_cast<std::uint8_t>(parity);
    }
    return code;
}

bool LdpcCode::syndrome_ok(std::span<const std::uint8_t> bits) const {
    if (bits.size() != static_cast<std::size_t>(n_))
        throw std::invalid_argument("syndrome_ok: wrong codeword length");
    for (int r = 0; r < m_; ++r) {
        std::uint8_t acc = 0;
        for (int e = row_ptr_[r]; e < row_ptr_[r + 1]; ++e)
            acc ^= bits[static_cast<std::size_t>(row_col_[e])] & 1;
        if (acc) return false;
    }
    return true;
}

DecodeResult LdpcCode::decode_bp(std::span<const double> llrs,
                                 const DecoderParams& params) const {
    if (llrs.size() != static_cast<std::size_t>(n_))
        throw std::invalid_argument("decode_bp: expected " + std::to_string(n_) + " LLRs");
    if (params.max_iters < 1) throw std::invalid_argument("decode_bp: max_iters must be >= 1");
    for (double v : llrs)
        if (!std::isfinite(v)) throw std::invalid_argument("decode_bp: non-finite LLR");

    std::vector<double> v2c(edges_), c2v(edges_, 0.0);
    for (std::size_t e = 0; e < edges_; ++e) v2c[e] = llrs[static_cast<std::size_t>(row_col_[e])];

    int max_deg = 0;
    for (int r = 0; r < m_; ++r) max_deg = std::max(max_deg, row_ptr_[r + 1] - row_ptr_[r]);
    std::vector<double> fwd(static_cast<std::size_t>(max_deg)), bwd(static_cast<std::size_t>(max_deg));

    DecodeResult res;
    res.bits.assign(static_cast<std::size_t>(n_), 0);

    for (int iter = 1; iter <= params.max_iters; ++iter) {
        // Check-node pass.
        for (int r = 0; r < m_; ++r) {
            const int base = row_ptr_[r];
            const int deg = row_ptr_[r + 1] - base;
            if (deg == 1) {
                c2v[static_cast<std::size_t>(base)] = kPinned;
                continue;
            }
            if (params.min_sum) {
                double min1 = std::numeric_limits<double>::infinity(), min2 = min1;
                int arg_min = 0, sign = 0;
                for (int j = 0; j < deg; ++j) {
                    const double v = v2c[static_cast<std::size_t>(base + j)];
                    const double a = std::abs(v);
                    if (v < 0.0) sign ^= 1;
                    if (a < min1) {
                        min2 = min1;
                        min1 = a;
                        arg_min = j;
                    } else if (a < min2) {
                        min2 = a;
                    }
                }
                for (int j = 0; j < deg; ++j) {
                    const double v = v2c[static_cast<std::size_t>(base + j)];
                    const int s = sign ^ (v < 0.0 ? 1 : 0);
                    const double mag = (j == arg_min ? min2 : min1) * params.min_sum_scale;
                    c2v[static_cast<std::size_t>(base + j)] = s ? -mag : mag;
                }
            } else {
                fwd[0] = v2c[static_cast<std::size_t>(base)];
                for (int j = 1; j < deg; ++j)
                    fwd[static_cast<std::size_t>(j)] =
                        boxplus(fwd[static_cast<std::size_t>(j - 1)], v2c[static_cast<std::size_t>(base + j)]);
                bwd[static_cast<std::size_t>(deg - 1)] = v2c[static_cast<std::size_t>(base + deg - 1)];
                for (int j = deg - 2; j >= 0; --j)
                    bwd[static_cast<std::size_t>(j)] =
                        boxplus(bwd[static_cast<std::size_t>(j + 1)], v2c[static_cast<std::size_t>(base + j)]);
                c2v[static_cast<std::size_t>(base)] = bwd[1];
                c2v[static_cast<std::size_t>(base + deg - 1)] = fwd[static_cast<std::size_t>(deg - 2)];
                for (int j = 1; j + 1 < deg; ++j)
                    c2v[static_cast<std::size_t>(base + j)] =
                        boxplus(fwd[static_cast<std::size_t>(j - 1)], bwd[static_cast<std::size_t>(j + 1)]);
            }
        }

        // Variable-node pass and hard decisions.
        for (int c = 0; c < n_; ++c) {
            double total = llrs[static_cast<std::size_t>(c)];
            for (int s = col_ptr_[c]; s < col_ptr_[c + 1]; ++s)
                total += c2v[static_cast<std::size_t>(col_edge_[s])];
            res.bits[static_cast<std::size_t>(c)] = total <= 0.0 ? 1 : 0;
            for (int s = col_ptr_[c]; s < col_ptr_[c + 1]; ++s) {
                const std::size_t e = static_cast<std::size_t>(col_edge_[s]);
                v2c[e] = total - c2v[e];
            }
        }

        res.iterations = iter;
        if (syndrome_ok(res.bits)) {
            res.converged = true;
            return res;
        }
    }
    res.converged = false;
    return res;
}

namespace {

// Balanced random socket construction shared by the generators: `targets`
// gives each row's remaining capacity; columns draw `col_weight` distinct
// rows while avoiding row pairs already used by another column (4-cycles).
std::vector<std::pair<int, int>> assign_sockets(int n_cols, int col_weight,
                                                const std::vector<int>& targets,
                                                std::unordered_set<std::uint64_t>& used_pairs,
                                                CounterRng& rng, int first_col = 0) {
    const int m = static_cast<int>(targets.size());
    std::vector<int> sockets;
    for (int r = 0; r < m; ++r)
        for (int t = 0; t < targets[static_cast<std::size_t>(r)]; ++t) sockets.push_back(r);

    auto pack = [](int a, int b) {
        if (a > b) std::swap(a, b);
        return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
    };

    std::vector<std::pair<int, int>> ones;
    for (int restart = 0; restart < 100; ++restart) {
        // Fisher-Yates
        for (std::size_t i = sockets.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(rng.next_u64() % i);
            std::swap(sockets[i - 1], sockets[j]);
        }
        ones.clear();
        auto pairs = used_pairs;
        std::size_t pos = 0;
        bool ok = true;
        for (int c = first_col; c < first_col + n_cols && ok; ++c) {
            const std::size_t begin = pos;
            int tries = 0;
            while (true) {
                bool clash = false;
                for (std::size_t i = begin; i + 1 < begin + static_cast<std::size_t>(col_weight) && !clash; ++i)
                    for (std::size_t j = i + 1; j < begin + static_cast<std::size_t>(col_weight); ++j)
                        if (sockets[i] == sockets[j]) {
                            clash = true;
                            break;
                        }
                bool cycle = false;
                if (!clash)
                    for (std::size_t i = begin; i + 1 < begin + static_cast<std::size_t>(col_weight) && !cycle; ++i)
                        for (std::size_t j = i + 1; j < begin + static_cast<std::size_t>(col_weight); ++j)
                            if (pairs.count(pack(sockets[i], sockets[j]))) {
                                cycle = true;
                                break;
                            }
                if (!clash && !cycle) break;
                ++tries;
                if (tries > 200 && !clash) break;  // tolerate a 4-cycle rather than loop forever
                if (tries > 2000) {
                    ok = false;  // duplicates unresolvable; reshuffle everything
                    break;
                }
                // swap a random socket of this column with a random later one
                const std::size_t i = begin + rng.next_u64() % static_cast<std::size_t>(col_weight);
                if (begin + static_cast<std::size_t>(col_weight) >= sockets.size()) {
                    ok = false;
                    break;
                }
                const std::size_t j = begin + static_cast<std::size_t>(col_weight) +
                                      rng.next_u64() % (sockets.size() - begin - static_cast<std::size_t>(col_weight));
                std::swap(sockets[i], sockets[j]);
            }
            if (!ok) break;
            for (int t = 0; t < col_weight; ++t) {
                const int r = sockets[pos + static_cast<std::size_t>(t)];
                ones.emplace_back(r, c);
            }
            for (int a = 0; a < col_weight; ++a)
                for (int b = a + 1; b < col_weight; ++b)
                    pairs.insert(pack(sockets[pos + static_cast<std::size_t>(a)],
                                      sockets[pos + static_cast<std::size_t>(b)]));
            pos += static_cast<std::size_t>(col_weight);
        }
        if (ok) {
            used_pairs = std::move(pairs);
            return ones;
        }
    }
    throw std::runtime_error("ldpc generator: socket assignment failed to converge");
}

std::vector<int> balanced_targets(int total, int m) {
    std::vector<int> t(static_cast<std::size_t>(m), total / m);
    for (int i = 0; i < total % m; ++i) ++t[static_cast<std::size_t>(i)];
    return t;
}

}  // namespace

LdpcCode LdpcCode::make_regular(int n_cols, int n_rows, int col_weight, std::uint64_t seed) {
    if (n_cols <= 0 || n_rows <= 0 || col_weight < 2 || col_weight > n_rows)
        throw std::invalid_argument("make_regular: bad parameters");
    CounterRng rng(seed, 0xC0DE);
    std::unordered_set<std::uint64_t> pairs;
    auto ones = assign_sockets(n_cols, col_weight, balanced_targets(n_cols * col_weight, n_rows),
                               pairs, rng);
    return LdpcCode(n_cols, n_rows, std::move(ones));
}

LdpcCode LdpcCode::make_staircase(int n_cols, int n_rows, int col_weight, std::uint64_t seed) {
    if (n_cols <= n_rows || col_weight < 2 || col_weight > n_rows)
        throw std::invalid_argument("make_staircase: need n > m and 2 <= col_weight <= m");
    const int k = n_cols - n_rows;
    CounterRng rng(seed, 0x57A1);
    std::unordered_set<std::uint64_t> pairs;

    std::vector<std::pair<int, int>> ones;
    for (int j = 0; j < n_rows; ++j) {
        ones.emplace_back(j, k + j);
        if (j + 1 < n_rows) {
            ones.emplace_back(j + 1, k + j);
            pairs.insert((static_cast<std::uint64_t>(j) << 32) | static_cast<std::uint64_t>(j + 1));
        }
    }
    auto info = assign_sockets(k, col_weight, balanced_targets(k * col_weight, n_rows), pairs,
                               rng);
    ones.insert(ones.end(), info.begin(), info.end());
    return LdpcCode(n_cols, n_rows, std::move(ones));
}

}  // namespace mlc
