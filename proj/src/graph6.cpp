#include "udg/graph6.hpp"

#include <algorithm>

namespace udg {

namespace {

constexpr int kBias = 63;

int sextet(std::string_view text, std::size_t offset)
{
    const int c = static_cast<unsigned char>(text[offset]);
    if (c < kBias || c > 126)
        throw Graph6Error(offset, "character " + std::to_string(c) + " outside 63..126");
    return c - kBias;
}

}  // namespace

Graph parse_graph6(std::string_view text)
{
    if (text.empty()) throw Graph6Error(0, "empty input");

    std::size_t pos = 0;
    int n = 0;
    if (text[0] == '~') {
        if (text.size() >= 2 && text[1] == '~')
            throw Graph6Error(1, "orders above 258047 are not supported");
        if (text.size() < 4) throw Graph6Error(text.size(), "truncated order field");
        n = (sextet(text, 1) << 12) | (sextet(text, 2) << 6) | sextet(text, 3);
        if (n < 63) throw Graph6Error(1, "non-canonical long order field");
        pos = 4;
    } else {
        n = sextet(text, 0);
        pos = 1;
    }
    if (n > kMaxVertices)
        throw Graph6Error(0, "order " + std::to_string(n) + " exceeds 64 vertices");

    const std::size_t bits = static_cast<std::size_t>(n) * (n - 1) / 2;
    const std::size_t body = (bits + 5) / 6;
    if (text.size() != pos + body)
        throw Graph6Error(std::min(text.size(), pos + body),
                          "expected " + std::to_string(pos + body) + " bytes, got " +
                              std::to_string(text.size()));

    Graph g(n);
    std::size_t k = 0;
    for (int v = 1; v < n; ++v) {
        for (int u = 0; u < v; ++u, ++k) {
            const int word = sextet(text, pos + k / 6);
            if ((word >> (5 - k % 6)) & 1) g.add_edge(u, v);
        }
    }
    if (bits % 6 != 0) {
        const std::size_t last = pos + body - 1;
        const int pad = static_cast<int>(6 - bits % 6);
        if ((sextet(text, last) & ((1 << pad) - 1)) != 0)
            throw Graph6Error(last, "nonzero padding bits");
    }
    return g;
}

std::string emit_graph6(const Graph& g)
{
    const int n = g.order();
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(n + kBias));
    } else {
        out.push_back('~');
        out.push_back(static_cast<char>(((n >> 12) & 63) + kBias));
        out.push_back(static_cast<char>(((n >> 6) & 63) + kBias));
        out.push_back(static_cast<char>((n & 63) + kBias));
    }
    int word = 0;
    int filled = 0;
    for (int v = 1; v < n; ++v) {
        for (int u = 0; u < v; ++u) {
            word = (word << 1) | (g.has_edge(u, v) ? 1 : 0);
            if (++filled == 6) {
                out.push_back(static_cast<char>(word + kBias));
                word = 0;
                filled = 0;
            }
        }
    }
    if (filled != 0) out.push_back(static_cast<char>((word << (6 - filled)) + kBias));
    return out;
}

}  // namespace udg
