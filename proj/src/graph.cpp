#include "tgp/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <queue>
#include <sstream>

#include "tgp/rng.hpp"

namespace tgp {

namespace {

void check_simple_symmetric(const BitMatrix& adj) {
    const std::size_t n = adj.size();
    for (std::size_t i = 0; i < n; ++i)
        if (adj.get(i, i)) fail(ErrorCode::NotSimple, "self-loop at vertex " + std::to_string(i));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (adj.get(i, j) != adj.get(j, i))
                fail(ErrorCode::NotSymmetric,
                     "adjacency differs at (" + std::to_string(i) + "," + std::to_string(j) + ")");
}

int common_degree(const BitMatrix& adj) {
    const std::size_t n = adj.size();
    if (n == 0) fail(ErrorCode::InvalidArgument, "empty adjacency");
    const std::size_t d = adj.row_popcount(0);
    for (std::size_t i = 1; i < n; ++i)
        if (adj.row_popcount(i) != d)
            fail(ErrorCode::NotRegular, "vertex " + std::to_string(i) + " has degree " +
                                            std::to_string(adj.row_popcount(i)) + ", expected " +
                                            std::to_string(d));
    return static_cast<int>(d);
}

// BFS 2-coloring; on failure reports the odd cycle through the conflicting
// edge. Returns color per vertex (components colored independently, the
// lowest-index vertex of each component gets color 0).
std::vector<int> two_color(const BitMatrix& adj) {
    const std::size_t n = adj.size();
    std::vector<int> color(n, -1), parent(n, -1);
    for (std::size_t start = 0; start < n; ++start) {
        if (color[start] != -1) continue;
        color[start] = 0;
        std::queue<std::size_t> q;
        q.push(start);
        while (!q.empty()) {
            std::size_t u = q.front();
            q.pop();
            for (int v : adj.neighbors(u)) {
                std::size_t w = static_cast<std::size_t>(v);
                if (color[w] == -1) {
                    color[w] = 1 - color[u];
                    parent[w] = static_cast<int>(u);
                    q.push(w);
                } else if (color[w] == color[u]) {
                    // walk both endpoints up to the BFS root to expose the cycle
                    std::vector<int> pu, pv;
                    for (int x = static_cast<int>(u); x != -1; x = parent[x]) pu.push_back(x);
                    for (int x = static_cast<int>(w); x != -1; x = parent[x]) pv.push_back(x);
                    std::ostringstream os;
                    os << "odd cycle witness:";
                    for (auto it = pu.rbegin(); it != pu.rend(); ++it) os << ' ' << *it;
                    os << " |";
                    for (auto it = pv.rbegin(); it != pv.rend(); ++it) os << ' ' << *it;
                    fail(ErrorCode::NotBipartite, os.str());
                }
            }
        }
    }
    return color;
}

}  // namespace

RegularGraph validate_regular(const BitMatrix& adj) {
    check_simple_symmetric(adj);
    const int d = common_degree(adj);
    return RegularGraph{static_cast<int>(adj.size()), d, adj};
}

BipartiteRegularGraph validate_bipartite(const BitMatrix& adj) {
    check_simple_symmetric(adj);
    const int d = common_degree(adj);
    const std::size_t n = adj.size();

    std::vector<std::size_t> xs, ys;
    if (d == 0) {
        if (n % 2 != 0)
            fail(ErrorCode::NotBipartite, "odd vertex count cannot split into equal parts");
        // edgeless: any balanced split works, keep index order
        for (std::size_t v = 0; v < n; ++v) (v < n / 2 ? xs : ys).push_back(v);
    } else {
        const std::vector<int> color = two_color(adj);  // throws with an odd-cycle witness
        for (std::size_t v = 0; v < n; ++v) (color[v] == 0 ? xs : ys).push_back(v);
        if (xs.size() != ys.size())
            fail(ErrorCode::NotBipartite, "color classes have sizes " + std::to_string(xs.size()) +
                                              " and " + std::to_string(ys.size()));
    }

    // relabel into canonical order: X block first, original order preserved
    std::vector<std::size_t> order = xs;
    order.insert(order.end(), ys.begin(), ys.end());
    BitMatrix relabeled(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (adj.get(order[i], order[j])) relabeled.set_edge(i, j);
    return BipartiteRegularGraph{static_cast<int>(n), d, std::move(relabeled)};
}

RegularGraph random_regular(int n, int d, std::uint64_t seed, int max_retries) {
    if (n <= 0 || d < 0 || d >= n || (static_cast<long long>(n) * d) % 2 != 0)
        fail(ErrorCode::InfeasibleDegree,
             "no simple " + std::to_string(d) + "-regular graph on " + std::to_string(n) + " vertices");
    Rng rng(seed);
    std::vector<int> stubs(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
    for (int v = 0; v < n; ++v)
        for (int i = 0; i < d; ++i) stubs[static_cast<std::size_t>(v) * d + i] = v;

    for (int attempt = 0; attempt < max_retries; ++attempt) {
        rng.shuffle(stubs);
        BitMatrix adj(static_cast<std::size_t>(n));
        bool ok = true;
        for (std::size_t i = 0; i + 1 < stubs.size() && ok; i += 2) {
            const int u = stubs[i], v = stubs[i + 1];
            if (u == v || adj.get(static_cast<std::size_t>(u), static_cast<std::size_t>(v))) {
                ok = false;
            } else {
                adj.set_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
            }
        }
        if (ok) return RegularGraph{n, d, std::move(adj)};
    }
    fail(ErrorCode::RetryBudgetExceeded, "pairing model failed after " + std::to_string(max_retries) +
                                             " attempts (n=" + std::to_string(n) +
                                             ", d=" + std::to_string(d) + ")");
}

BipartiteRegularGraph random_bipartite_regular(int n, int d, std::uint64_t seed, int max_retries) {
    if (n <= 0 || n % 2 != 0 || d < 0 || d > n / 2)
        fail(ErrorCode::InfeasibleDegree, "no simple bipartite " + std::to_string(d) +
                                              "-regular graph on " + std::to_string(n) + " vertices");
    const int half = n / 2;
    // dense targets collide almost surely; draw the sparse complement instead
    if (2 * d > half)
        return bipartite_complement(random_bipartite_regular(n, half - d, seed, max_retries));
    Rng rng(seed);
    std::vector<int> perm(static_cast<std::size_t>(half));

    for (int attempt = 0; attempt < max_retries; ++attempt) {
        BitMatrix adj(static_cast<std::size_t>(n));
        bool ok = true;
        for (int m = 0; m < d && ok; ++m) {
            std::iota(perm.begin(), perm.end(), 0);
            rng.shuffle(perm);
            for (int x = 0; x < half; ++x) {
                const std::size_t u = static_cast<std::size_t>(x);
                const std::size_t v = static_cast<std::size_t>(half + perm[static_cast<std::size_t>(x)]);
                if (adj.get(u, v)) {
                    ok = false;
                    break;
                }
                adj.set_edge(u, v);
            }
        }
        if (ok) return BipartiteRegularGraph{n, d, std::move(adj)};
    }
    fail(ErrorCode::RetryBudgetExceeded, "matching union failed after " + std::to_string(max_retries) +
                                             " attempts (n=" + std::to_string(n) +
                                             ", d=" + std::to_string(d) + ")");
}

BipartiteRegularGraph bipartite_complement(const BipartiteRegularGraph& g) {
    const std::size_t n = static_cast<std::size_t>(g.n);
    const std::size_t half = n / 2;
    BitMatrix adj(n);
    for (std::size_t x = 0; x < half; ++x)
        for (std::size_t y = half; y < n; ++y)
            if (!g.adj.get(x, y)) adj.set_edge(x, y);
    return BipartiteRegularGraph{g.n, g.n / 2 - g.d, std::move(adj)};
}

bool is_connected(const BitMatrix& adj) {
    const std::size_t n = adj.size();
    if (n == 0) return true;
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t visited = 1;
    while (!stack.empty()) {
        std::size_t u = stack.back();
        stack.pop_back();
        for (int v : adj.neighbors(u)) {
            if (!seen[static_cast<std::size_t>(v)]) {
                seen[static_cast<std::size_t>(v)] = 1;
                ++visited;
                stack.push_back(static_cast<std::size_t>(v));
            }
        }
    }
    return visited == n;
}

std::uint64_t graph_hash(int n, int d, const BitMatrix& adj) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t v) {
        for (int b = 0; b < 8; ++b) {
            h ^= (v >> (8 * b)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    };
    mix(static_cast<std::uint64_t>(n));
    mix(static_cast<std::uint64_t>(d));
    for (std::size_t i = 0; i < adj.size(); ++i)
        for (int j : adj.neighbors(i))
            if (static_cast<std::size_t>(j) > i) mix((i << 32) | static_cast<std::uint64_t>(j));
    return h;
}

EdgeList to_edge_list(const RegularGraph& g) {
    EdgeList el;
    el.n = g.n;
    el.d = g.d;
    el.bipartite = false;
    for (std::size_t i = 0; i < g.adj.size(); ++i)
        for (int j : g.adj.neighbors(i))
            if (static_cast<std::size_t>(j) > i) el.edges.emplace_back(static_cast<int>(i), j);
    return el;
}

EdgeList to_edge_list(const BipartiteRegularGraph& g) {
    EdgeList el;
    el.n = g.n;
    el.d = g.d;
    el.bipartite = true;
    for (std::size_t i = 0; i < g.adj.size(); ++i)
        for (int j : g.adj.neighbors(i))
            if (static_cast<std::size_t>(j) > i) el.edges.emplace_back(static_cast<int>(i), j);
    return el;
}

std::string write_edge_list(const EdgeList& el) {
    std::ostringstream os;
    for (const auto& c : el.comments) os << "# " << c << '\n';
    os << el.n << ' ' << el.d;
    if (el.bipartite) os << " bipartite";
    os << '\n';
    for (const auto& [u, v] : el.edges) os << u << ' ' << v << '\n';
    return os.str();
}

EdgeList parse_edge_list(std::string_view text) {
    EdgeList el;
    std::istringstream in{std::string(text)};
    std::string line;
    bool have_header = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view sv(line);
        while (!sv.empty() && (sv.back() == '\r' || sv.back() == ' ')) sv.remove_suffix(1);
        while (!sv.empty() && sv.front() == ' ') sv.remove_prefix(1);
        if (sv.empty()) continue;
        if (sv.front() == '#') {
            sv.remove_prefix(1);
            if (!sv.empty() && sv.front() == ' ') sv.remove_prefix(1);
            el.comments.emplace_back(sv);
            continue;
        }
        std::istringstream fields{std::string(sv)};
        if (!have_header) {
            std::string tag;
            if (!(fields >> el.n >> el.d))
                fail(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": expected 'n d [bipartite]'");
            if (fields >> tag) {
                if (tag != "bipartite")
                    fail(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": unknown tag '" + tag + "'");
                el.bipartite = true;
            }
            if (el.n <= 0 || el.d < 0)
                fail(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": bad header values");
            have_header = true;
            continue;
        }
        int u, v;
        if (!(fields >> u >> v))
            fail(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": expected 'u v'");
        if (u < 0 || v < 0 || u >= el.n || v >= el.n || u >= v)
            fail(ErrorCode::ParseError,
                 "line " + std::to_string(lineno) + ": edge (" + std::to_string(u) + "," +
                     std::to_string(v) + ") out of range or not u < v");
        el.edges.emplace_back(u, v);
    }
    if (!have_header) fail(ErrorCode::ParseError, "missing header line");
    std::sort(el.edges.begin(), el.edges.end());
    if (std::adjacent_find(el.edges.begin(), el.edges.end()) != el.edges.end())
        fail(ErrorCode::ParseError, "duplicate edge");
    return el;
}

BitMatrix edge_list_bits(const EdgeList& el) {
    BitMatrix adj(static_cast<std::size_t>(el.n));
    for (const auto& [u, v] : el.edges)
        adj.set_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
    return adj;
}

EdgeList read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::ParseError, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_edge_list(buf.str());
}

void write_edge_list_file(const std::string& path, const EdgeList& el) {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::ParseError, "cannot write " + path);
    out << write_edge_list(el);
}

RegularGraph load_regular(const std::string& path) {
    const EdgeList el = read_edge_list_file(path);
    RegularGraph g = validate_regular(edge_list_bits(el));
    if (g.d != el.d)
        fail(ErrorCode::ParseError, "header claims degree " + std::to_string(el.d) + " but graph is " +
                                        std::to_string(g.d) + "-regular");
    return g;
}

BipartiteRegularGraph load_bipartite(const std::string& path) {
    const EdgeList el = read_edge_list_file(path);
    BipartiteRegularGraph g = validate_bipartite(edge_list_bits(el));
    if (g.d != el.d)
        fail(ErrorCode::ParseError, "header claims degree " + std::to_string(el.d) + " but graph is " +
                                        std::to_string(g.d) + "-regular");
    return g;
}

}  // namespace tgp
