#include "hopfalgd/corpus.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <tuple>

namespace hopfalgd {

namespace {

GroupTable cyclic(int m)
{
    GroupTable g{"C" + std::to_string(m), m, {}};
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) g.mult.push_back((a + b) % m);
    return g;
}

GroupTable product(const GroupTable& x, const GroupTable& y)
{
    GroupTable g{x.name + "x" + y.name, x.order * y.order, {}};
    for (int a = 0; a < g.order; ++a)
        for (int b = 0; b < g.order; ++b)
            g.mult.push_back(x(a / y.order, b / y.order) * y.order + y(a % y.order, b % y.order));
    return g;
}

// r^k s^e stored as k + n e
GroupTable dihedral(int n, std::string name)
{
    GroupTable g{std::move(name), 2 * n, {}};
    for (int a = 0; a < 2 * n; ++a)
        for (int b = 0; b < 2 * n; ++b) {
            const int k1 = a % n, e1 = a / n, k2 = b % n, e2 = b / n;
            const int k = ((e1 ? k1 - k2 : k1 + k2) % n + n) % n;
            g.mult.push_back(k + n * (e1 ^ e2));
        }
    return g;
}

// 2u + (negative), units 1, i, j, k
GroupTable quaternion()
{
    // unit product table: sign and unit of u v
    const int sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    GroupTable g{"Q8", 8, {}};
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            const int u = a / 2, v = b / 2;
            const bool neg = ((a % 2) ^ (b % 2) ^ (sign[u][v] < 0)) != 0;
            g.mult.push_back(2 * unit[u][v] + (neg ? 1 : 0));
        }
    return g;
}

std::string element(int k)
{
    return "g" + std::to_string(k);
}

using Key = std::vector<int>;

// Arrows described by integer keys; compose(g_key, f_key) gives the key of g after f.
FiniteGroupoid keyed(std::vector<std::string> objects, const std::vector<std::tuple<std::string, std::string, std::string, Key>>& arrows,
                     const std::function<std::optional<Key>(const Key&, const Key&)>& compose)
{
    std::map<std::string, Key> key_of;
    std::map<Key, std::string> name_of;
    std::vector<ArrowSpec> specs;
    for (const auto& [id, s, t, k] : arrows) {
        key_of[id] = k;
        name_of[k] = id;
        specs.push_back({id, s, t});
    }
    return FiniteGroupoid::build(std::move(objects), std::move(specs),
                                 [&](const std::string& g, const std::string& f) -> std::optional<std::string> {
                                     auto k = compose(key_of.at(g), key_of.at(f));
                                     if (!k) return std::nullopt;
                                     return name_of.at(*k);
                                 });
}

}  // namespace

std::vector<GroupTable> small_groups(int max_order)
{
    if (max_order > 10) throw std::invalid_argument("small_groups: orders above 10 are not tabulated");
    std::vector<GroupTable> all{cyclic(1), cyclic(2), cyclic(3), cyclic(4), product(cyclic(2), cyclic(2)), cyclic(5),
                                cyclic(6), dihedral(3, "S3"), cyclic(7), cyclic(8), product(cyclic(4), cyclic(2)),
                                product(product(cyclic(2), cyclic(2)), cyclic(2)), dihedral(4, "D4"), quaternion(),
                                cyclic(9), product(cyclic(3), cyclic(3)), cyclic(10), dihedral(5, "D5")};
    std::vector<GroupTable> out;
    for (GroupTable& g : all)
        if (g.order <= max_order) out.push_back(std::move(g));
    return out;
}

FiniteGroupoid one_object_groupoid(const GroupTable& g)
{
    std::vector<ArrowSpec> arrows;
    for (int k = 0; k < g.order; ++k) arrows.push_back({element(k), "*", "*"});
    return FiniteGroupoid::build({"*"}, std::move(arrows), [&](const std::string& a, const std::string& b) -> std::optional<std::string> {
        return element(g(std::stoi(a.substr(1)), std::stoi(b.substr(1))));
    });
}

FiniteGroupoid pair_times_group(int n, const GroupTable& g)
{
    if (n == 1) return one_object_groupoid(g);
    std::vector<std::string> objects;
    for (int i = 1; i <= n; ++i) objects.push_back(std::to_string(i));
    std::vector<std::tuple<std::string, std::string, std::string, Key>> arrows;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 0; k < g.order; ++k) {
                std::string id = '(' + std::to_string(i) + ',' + std::to_string(j);
                if (g.order > 1) id += ',' + element(k);
                id += ')';
                arrows.emplace_back(id, std::to_string(i), std::to_string(j), Key{i, j, k});
            }
    return keyed(objects, arrows, [&](const Key& a, const Key& b) -> std::optional<Key> {
        if (b[1] != a[0]) return std::nullopt;
        return Key{b[0], a[1], g(a[2], b[2])};
    });
}

std::vector<NamedGroupoid> connected_corpus(int max_objects, int max_arrows)
{
    std::vector<NamedGroupoid> out;
    for (int n = 1; n <= max_objects; ++n) {
        if (n * n > max_arrows) break;
        for (const GroupTable& g : small_groups(std::min(10, max_arrows / (n * n)))) {
            std::string name = n == 1 ? g.name : "P" + std::to_string(n) + (g.order == 1 ? "" : "x" + g.name);
            out.push_back({std::move(name), pair_times_group(n, g)});
        }
    }
    return out;
}

std::vector<NamedGroupoid> named_fixtures()
{
    std::vector<NamedGroupoid> out;
    out.push_back({"terminal", FiniteGroupoid({"*"}, {{"id", "*", "*"}}, {{"id", "id", "id"}})});
    out.push_back({"pair2", keyed({"1", "2"},
                                  {{"id1", "1", "1", {1, 1}}, {"id2", "2", "2", {2, 2}}, {"a", "1", "2", {1, 2}}, {"ainv", "2", "1", {2, 1}}},
                                  [](const Key& g, const Key& f) -> std::optional<Key> {
                                      if (f[1] != g[0]) return std::nullopt;
                                      return Key{f[0], g[1]};
                                  })});
    out.push_back({"C2", keyed({"*"}, {{"e", "*", "*", {0}}, {"eps", "*", "*", {1}}},
                               [](const Key& g, const Key& f) -> std::optional<Key> { return Key{g[0] ^ f[0]}; })});
    {
        std::vector<std::tuple<std::string, std::string, std::string, Key>> arrows;
        for (int k = 0; k < 4; ++k) arrows.emplace_back(std::to_string(k), "*", "*", Key{k});
        out.push_back({"Z4", keyed({"*"}, arrows, [](const Key& g, const Key& f) -> std::optional<Key> { return Key{(g[0] + f[0]) % 4}; })});
    }
    {
        // permutations of {1,2,3} in one-line notation; g after f is x -> g(f(x))
        std::vector<std::tuple<std::string, std::string, std::string, Key>> arrows;
        std::array<int, 3> p{1, 2, 3};
        do {
            arrows.emplace_back(std::to_string(p[0]) + std::to_string(p[1]) + std::to_string(p[2]), "*", "*", Key{p[0], p[1], p[2]});
        } while (std::next_permutation(p.begin(), p.end()));
        out.push_back({"S3", keyed({"*"}, arrows, [](const Key& g, const Key& f) -> std::optional<Key> {
                           return Key{g[static_cast<std::size_t>(f[0] - 1)], g[static_cast<std::size_t>(f[1] - 1)], g[static_cast<std::size_t>(f[2] - 1)]};
                       })});
    }
    out.push_back({"pair2xC2", keyed({"1", "2"},
                                     {{"id1", "1", "1", {1, 1, 0}},
                                      {"eps1", "1", "1", {1, 1, 1}},
                                      {"id2", "2", "2", {2, 2, 0}},
                                      {"eps2", "2", "2", {2, 2, 1}},
                                      {"a", "1", "2", {1, 2, 0}},
                                      {"a_eps", "1", "2", {1, 2, 1}},
                                      {"ainv", "2", "1", {2, 1, 0}},
                                      {"eps_ainv", "2", "1", {2, 1, 1}}},
                                     [](const Key& g, const Key& f) -> std::optional<Key> {
                                         if (f[1] != g[0]) return std::nullopt;
                                         return Key{f[0], g[1], f[2] ^ g[2]};
                                     })});
    out.push_back({"C2uC2", keyed({"1", "2"},
                                  {{"id1", "1", "1", {1, 0}}, {"eps1", "1", "1", {1, 1}}, {"id2", "2", "2", {2, 0}}, {"eps2", "2", "2", {2, 1}}},
                                  [](const Key& g, const Key& f) -> std::optional<Key> {
                                      if (f[0] != g[0]) return std::nullopt;
                                      return Key{f[0], f[1] ^ g[1]};
                                  })});
    return out;
}

NamedGroupoid named_fixture(const std::string& name)
{
    for (NamedGroupoid& g : named_fixtures())
        if (g.name == name) return std::move(g);
    throw std::invalid_argument("unknown fixture '" + name + "'");
}

}  // namespace hopfalgd
