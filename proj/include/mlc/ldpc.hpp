// LDPC codes: alist I/O, encoding, and log-domain belief propagation.
#ifndef MLC_LDPC_HPP
#define MLC_LDPC_HPP

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mlc {

struct DecoderParams {
    int max_iters = 50;
    bool min_sum = false;        // default is exact sum-product
    double min_sum_scale = 0.75;
};

struct DecodeResult {
    std::vector<std::uint8_t> bits;  // hard decisions, length n
    int iterations = 0;
    bool converged = false;          // true iff the syndrome is zero
};

/// Sparse binary parity-check matrix plus the derived encoder.
///
/// The encoder is precomputed once per code: a staircase (dual-diagonal)
/// parity part, as in DVB-S.2-style constructions, gets an O(edges)
/// back-substitution encoder; anything else goes through dense GF(2)
/// row reduction, which also determines the true rank. The information
/// length is k = n - rank, so rank-deficient matrices simply expose a
/// larger k rather than failing.
class LdpcCode {
public:
    /// Build from explicit coordinates (1 entries as (row, col), 0-based).
    LdpcCode(int n_cols, int n_rows, std::vector<std::pair<int, int>> ones);

    /// Parse the standard alist text format. Errors name the offending line.
    static LdpcCode load_alist(const std::string& path);
    void save_alist(const std::string& path) const;

    int n() const { return n_; }
    int m() const { return m_; }
    int k() const { return k_; }
    double rate() const { return static_cast<double>(k_) / n_; }
    int rank() const { return n_ - k_; }
    std::size_t edge_count() const { return edges_; }

    /// Column indices that carry information bits, in encode order.
    const std::vector<int>& info_positions() const { return info_cols_; }

    /// Systematic encode: info bits land on info_positions(), parity fills
    /// the rest; the result always has zero syndrome. Throws on length
    /// mismatch.
    std::vector<std::uint8_t> encode(std::span<const std::uint8_t> info) const;

    /// Flooding-schedule belief propagation with early exit on zero
    /// syndrome. LLR sign convention: positive favors bit 0. Throws
    /// std::invalid_argument on non-finite input LLRs.
    DecodeResult decode_bp(std::span<const double> llrs,
                           const DecoderParams& params = {}) const;

    bool syndrome_ok(std::span<const std::uint8_t> bits) const;

    /// Pseudorandom column-weight-regular code with balanced row weights
    /// and best-effort 4-cycle avoidance. Deterministic in the seed.
    static LdpcCode make_regular(int n_cols, int n_rows, int col_weight,
                                 std::uint64_t seed);

    /// Random information part plus staircase parity part; always full
    /// rank, encodable in O(edges) at any size.
    static LdpcCode make_staircase(int n_cols, int n_rows, int col_weight,
                                   std::uint64_t seed);

private:
    void build_adjacency(const std::vector<std::pair<int, int>>& ones);
    void build_encoder();
    bool detect_staircase() const;

    int n_ = 0, m_ = 0, k_ = 0;
    std::size_t edges_ = 0;

    // CSR-style adjacency, both orientations, sharing one edge id space.
    std::vector<int> row_ptr_, row_col_, row_edge_;
    std::vector<int> col_ptr_, col_row_, col_edge_;

    // Encoder: either staircase back-substitution over the row adjacency,
    // or per-pivot parity masks over the info columns from dense RREF.
    bool staircase_ = false;
    std::vector<int> info_cols_;
    std::vector<int> pivot_cols_;
    std::vector<std::uint64_t> pivot_masks_;  // rank rows x ceil(k/64) words
    std::size_t mask_words_ = 0;
};

}  // namespace mlc

#endif
