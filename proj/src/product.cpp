#include "tgp/product.hpp"

#include <algorithm>
#include <sstream>

#include "tgp/errors.hpp"

namespace tgp {

Template Template::complement() const {
    Template c = *this;
    for (auto& s : c.symbols) s = (s == Side::X) ? Side::Y : Side::X;
    return c;
}

std::string Template::str() const {
    std::string out;
    out.reserve(symbols.size());
    for (Side s : symbols) out.push_back(s == Side::X ? 'X' : 'Y');
    return out;
}

Template Template::parse(const std::string& s) {
    if (s.empty()) fail(ErrorCode::InvalidArgument, "template must have length >= 1");
    Template t;
    t.symbols.reserve(s.size());
    for (char c : s) {
        if (c == 'X' || c == 'x')
            t.symbols.push_back(Side::X);
        else if (c == 'Y' || c == 'y')
            t.symbols.push_back(Side::Y);
        else
            fail(ErrorCode::InvalidArgument, std::string("template symbol '") + c + "' is not X or Y");
    }
    return t;
}

Template Template::all_x(int k) {
    if (k < 1) fail(ErrorCode::InvalidArgument, "template length must be >= 1");
    Template t;
    t.symbols.assign(static_cast<std::size_t>(k), Side::X);
    return t;
}

std::vector<Template> Template::representatives(int k) {
    if (k < 1) fail(ErrorCode::InvalidArgument, "template length must be >= 1");
    std::vector<Template> out;
    const std::uint64_t count = std::uint64_t{1} << (k - 1);
    for (std::uint64_t bits = 0; bits < count; ++bits) {
        Template t;
        t.symbols.resize(static_cast<std::size_t>(k), Side::X);
        for (int j = 1; j < k; ++j)
            if ((bits >> (k - 1 - j)) & 1) t.symbols[static_cast<std::size_t>(j)] = Side::Y;
        out.push_back(std::move(t));
    }
    return out;
}

int Template::x_count() const {
    int c = 0;
    for (Side s : symbols) c += (s == Side::X);
    return c;
}

const char* to_string(ProductKind kind) {
    switch (kind) {
        case ProductKind::gp: return "gp";
        case ProductKind::bgp: return "bgp";
        case ProductKind::bgp_template: return "bgp-template";
        case ProductKind::sgp: return "sgp";
    }
    return "?";
}

ProductKind product_kind_from(const std::string& name) {
    if (name == "gp") return ProductKind::gp;
    if (name == "bgp") return ProductKind::bgp;
    if (name == "bgp-template" || name == "bgp_template") return ProductKind::bgp_template;
    if (name == "sgp") return ProductKind::sgp;
    fail(ErrorCode::InvalidArgument, "unknown product kind '" + name + "'");
}

mpz_class ProductGraph::formula_degree() const {
    return kind == ProductKind::gp ? degree_gp(base_n, base_d, k, t)
                                   : degree_bgp(base_n, base_d, k, t);
}

int coordinate_edge_count(std::span<const int> a, std::span<const int> b, const BitMatrix& base_adj) {
    if (a.size() != b.size())
        fail(ErrorCode::LengthMismatch, "tuples have lengths " + std::to_string(a.size()) + " and " +
                                            std::to_string(b.size()));
    int count = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        count += base_adj.get(static_cast<std::size_t>(a[i]), static_cast<std::size_t>(b[i]));
    return count;
}

namespace {

void check_k_t(int k, int t) {
    if (k < 1 || t < 1 || t > k)
        fail(ErrorCode::InvalidArgument,
             "need 1 <= t <= k, got k=" + std::to_string(k) + " t=" + std::to_string(t));
}

std::size_t checked_power(std::size_t base, int exp, std::size_t cap) {
    std::size_t v = 1;
    for (int i = 0; i < exp; ++i) {
        if (base != 0 && v > cap / base + 1)
            fail(ErrorCode::CapExceeded, "product vertex count exceeds cap " + std::to_string(cap));
        v *= base;
    }
    if (v > cap)
        fail(ErrorCode::CapExceeded, "product vertex count " + std::to_string(v) + " exceeds cap " +
                                         std::to_string(cap));
    return v;
}

// all k-tuples with coordinate j running over [lo_j, hi_j), last coordinate fastest
std::vector<std::vector<int>> tuples_for_ranges(const std::vector<std::pair<int, int>>& ranges) {
    std::size_t total = 1;
    for (const auto& [lo, hi] : ranges) total *= static_cast<std::size_t>(hi - lo);
    std::vector<std::vector<int>> out;
    out.reserve(total);
    std::vector<int> cur(ranges.size());
    for (std::size_t i = 0; i < ranges.size(); ++i) cur[i] = ranges[i].first;
    for (;;) {
        out.push_back(cur);
        int pos = static_cast<int>(ranges.size()) - 1;
        while (pos >= 0) {
            if (++cur[static_cast<std::size_t>(pos)] < ranges[static_cast<std::size_t>(pos)].second) break;
            cur[static_cast<std::size_t>(pos)] = ranges[static_cast<std::size_t>(pos)].first;
            --pos;
        }
        if (pos < 0) break;
    }
    return out;
}

void fill_threshold_edges(ProductGraph& p, const BitMatrix& base_adj) {
    const std::size_t n = p.vertices.size();
    const int t = p.t;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (coordinate_edge_count(p.vertices[i], p.vertices[j], base_adj) >= t)
                p.adj.set_edge(i, j);
        }
    }
}

// edges only between the two blocks [0, half) and [half, n)
void fill_threshold_edges_cross(ProductGraph& p, const BitMatrix& base_adj, std::size_t half) {
    const std::size_t n = p.vertices.size();
    const int t = p.t;
    for (std::size_t i = 0; i < half; ++i)
        for (std::size_t j = half; j < n; ++j)
            if (coordinate_edge_count(p.vertices[i], p.vertices[j], base_adj) >= t)
                p.adj.set_edge(i, j);
}

void assert_no_self_adjacency(const ProductGraph& p) {
    // the base graph is simple, so a tuple never meets the threshold with itself
    require(!p.adj.has_diagonal(), ErrorCode::InvalidArgument, "product grew a self-loop");
}

}  // namespace

std::vector<std::vector<int>> template_block_tuples(int base_n, const Template& tau) {
    const int half = base_n / 2;
    std::vector<std::pair<int, int>> ranges;
    ranges.reserve(tau.symbols.size());
    for (Side s : tau.symbols)
        ranges.emplace_back(s == Side::X ? 0 : half, s == Side::X ? half : base_n);
    return tuples_for_ranges(ranges);
}

ProductGraph gp(const RegularGraph& g, int k, int t, std::size_t cap) {
    check_k_t(k, t);
    const std::size_t count = checked_power(static_cast<std::size_t>(g.n), k, cap);
    ProductGraph p;
    p.kind = ProductKind::gp;
    p.k = k;
    p.t = t;
    p.base_n = g.n;
    p.base_d = g.d;
    p.base_bipartite = false;
    p.base_hash = graph_hash(g.n, g.d, g.adj);
    p.vertices = tuples_for_ranges(std::vector<std::pair<int, int>>(static_cast<std::size_t>(k), {0, g.n}));
    p.adj = BitMatrix(count);
    fill_threshold_edges(p, g.adj);
    assert_no_self_adjacency(p);
    return p;
}

ProductGraph bgp(const BipartiteRegularGraph& g, int k, int t, std::size_t cap) {
    return bgp_template(g, k, t, Template::all_x(k), cap);
}

ProductGraph bgp_template(const BipartiteRegularGraph& g, int k, int t, const Template& tau,
                          std::size_t cap) {
    check_k_t(k, t);
    if (tau.k() != k)
        fail(ErrorCode::LengthMismatch, "template length " + std::to_string(tau.k()) +
                                            " does not match k=" + std::to_string(k));
    const std::size_t half = checked_power(static_cast<std::size_t>(g.n / 2), k, cap / 2);
    ProductGraph p;
    p.kind = (tau.x_count() == k) ? ProductKind::bgp : ProductKind::bgp_template;
    p.k = k;
    p.t = t;
    p.base_n = g.n;
    p.base_d = g.d;
    p.base_bipartite = true;
    p.base_hash = graph_hash(g.n, g.d, g.adj);
    p.tau = tau;
    p.vertices = template_block_tuples(g.n, tau);
    {
        auto other = template_block_tuples(g.n, tau.complement());
        p.vertices.insert(p.vertices.end(), other.begin(), other.end());
    }
    p.adj = BitMatrix(2 * half);
    fill_threshold_edges_cross(p, g.adj, half);
    assert_no_self_adjacency(p);
    return p;
}

ProductGraph sgp(const BipartiteRegularGraph& g, int k, int t, std::size_t cap) {
    check_k_t(k, t);
    const std::size_t count = checked_power(static_cast<std::size_t>(g.n), k, cap);
    ProductGraph p;
    p.kind = ProductKind::sgp;
    p.k = k;
    p.t = t;
    p.base_n = g.n;
    p.base_d = g.d;
    p.base_bipartite = true;
    p.base_hash = graph_hash(g.n, g.d, g.adj);
    p.vertices = tuples_for_ranges(std::vector<std::pair<int, int>>(static_cast<std::size_t>(k), {0, g.n}));
    p.adj = BitMatrix(count);

    // template of a tuple as a bitmask: bit j set iff coordinate j is on the Y side
    const int half = g.n / 2;
    std::vector<std::uint32_t> mask(count, 0);
    for (std::size_t i = 0; i < count; ++i)
        for (int j = 0; j < k; ++j)
            if (p.vertices[i][static_cast<std::size_t>(j)] >= half)
                mask[i] |= (std::uint32_t{1} << j);
    const std::uint32_t full = (k == 32) ? ~std::uint32_t{0} : ((std::uint32_t{1} << k) - 1);

    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = i + 1; j < count; ++j) {
            if ((mask[i] ^ mask[j]) != full) continue;
            if (coordinate_edge_count(p.vertices[i], p.vertices[j], g.adj) >= t) p.adj.set_edge(i, j);
        }
    }
    assert_no_self_adjacency(p);
    return p;
}

std::vector<std::uint8_t> sgp_adjacency_tensor(const BipartiteRegularGraph& g, int k, int t,
                                               std::size_t cap) {
    check_k_t(k, t);
    const std::size_t count = checked_power(static_cast<std::size_t>(g.n), k, cap);
    const auto tuples =
        tuples_for_ranges(std::vector<std::pair<int, int>>(static_cast<std::size_t>(k), {0, g.n}));

    const BitMatrix& a = g.adj;
    const BitMatrix abar = bipartite_complement(g).adj;

    std::vector<std::uint8_t> out(count * count, 0);
    // enumerate sign vectors b in {-1,+1}^k with at least t ones; bit j set means b_j = +1
    for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << k); ++bits) {
        if (__builtin_popcount(bits) < t) continue;
        for (std::size_t r = 0; r < count; ++r) {
            const auto& h = tuples[r];
            std::uint8_t* row = out.data() + r * count;
            for (std::size_t c = 0; c < count; ++c) {
                const auto& gg = tuples[c];
                std::uint8_t prod = 1;
                for (int j = 0; j < k && prod; ++j) {
                    const BitMatrix& m = ((bits >> j) & 1) ? a : abar;
                    prod = static_cast<std::uint8_t>(
                        prod & m.get(static_cast<std::size_t>(h[static_cast<std::size_t>(j)]),
                                     static_cast<std::size_t>(gg[static_cast<std::size_t>(j)])));
                }
                row[c] = static_cast<std::uint8_t>(row[c] + prod);
            }
        }
    }
    return out;
}

mpz_class binomial(int n, int r) {
    if (r < 0 || r > n) return 0;
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
    return out;
}

namespace {

mpz_class pow_mpz(const mpz_class& base, int exp) {
    mpz_class out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(exp));
    return out;  // 0^0 == 1, as the degree sum requires
}

mpz_class degree_sum(int d, const mpz_class& nonedge, int k, int t) {
    mpz_class total = 0;
    for (int tp = t; tp <= k; ++tp)
        total += binomial(k, tp) * pow_mpz(d, tp) * pow_mpz(nonedge, k - tp);
    return total;
}

}  // namespace

mpz_class degree_gp(int n, int d, int k, int t) {
    check_k_t(k, t);
    return degree_sum(d, mpz_class(n - d), k, t);
}

mpz_class degree_bgp(int n, int d, int k, int t) {
    check_k_t(k, t);
    if (n % 2 != 0) fail(ErrorCode::InvalidArgument, "bipartite degree formula needs even n");
    return degree_sum(d, mpz_class(n / 2 - d), k, t);
}

DegreeAudit audit_degree(const ProductGraph& p) {
    DegreeAudit audit;
    audit.formula = p.formula_degree();
    const std::size_t n = p.size();
    if (n == 0) return audit;
    const std::uint64_t d0 = p.adj.row_popcount(0);
    audit.regular = true;
    for (std::size_t i = 1; i < n; ++i) {
        if (p.adj.row_popcount(i) != d0) {
            audit.regular = false;
            break;
        }
    }
    audit.audited_degree = d0;
    audit.matches_formula =
        audit.regular && mpz_cmp_ui(audit.formula.get_mpz_t(), d0) == 0;
    return audit;
}

EdgeList to_edge_list(const ProductGraph& p, std::uint64_t seed) {
    EdgeList el;
    el.n = static_cast<int>(p.size());
    el.d = static_cast<int>(p.adj.row_popcount(0));
    el.bipartite = p.two_block_layout();
    std::ostringstream header;
    header << "tgp product kind=" << to_string(p.kind) << " k=" << p.k << " t=" << p.t;
    if (p.tau) header << " template=" << p.tau->str();
    header << " base-hash=" << std::hex << p.base_hash << std::dec << " seed=" << seed;
    el.comments.push_back(header.str());
    for (std::size_t i = 0; i < p.size(); ++i)
        for (int j : p.adj.neighbors(i))
            if (static_cast<std::size_t>(j) > i) el.edges.emplace_back(static_cast<int>(i), j);
    return el;
}

}  // namespace tgp
