#include "hopfalgd/groupoid.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace hopfalgd {

namespace {

template <class T> int index_in(const std::vector<T>& sorted, const T& x)
{
    auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
    if (it == sorted.end() || *it != x) return FiniteGroupoid::kUndefined;
    return static_cast<int>(it - sorted.begin());
}

std::string pair_id(const std::string& a, const std::string& b)
{
    return '(' + a + ',' + b + ')';
}

struct UnionFind {
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x)
    {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    }
    void join(int a, int b)
    {
        a = find(a), b = find(b);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
    std::vector<std::vector<int>> classes()
    {
        std::map<int, std::vector<int>> by_root;
        for (int i = 0; i < static_cast<int>(parent.size()); ++i) by_root[find(i)].push_back(i);
        std::vector<std::vector<int>> out;
        for (auto& [root, members] : by_root) out.push_back(std::move(members));
        std::sort(out.begin(), out.end());
        return out;
    }
    std::vector<int> parent;
};

WideSubgroupoid from_indices(const FiniteGroupoid& g, const std::vector<int>& arrows)
{
    WideSubgroupoid n{std::vector<bool>(static_cast<std::size_t>(g.arrow_count()), false)};
    for (int a : arrows) n.member[static_cast<std::size_t>(a)] = true;
    return n;
}

// Identities plus `seed`, closed under composition, inverses and conjugation.
std::vector<int> normal_closure(const FiniteGroupoid& g, std::vector<bool> in)
{
    for (int x = 0; x < g.object_count(); ++x)
        if (g.identity(x) >= 0) in[static_cast<std::size_t>(g.identity(x))] = true;
    bool changed = true;
    while (changed) {
        changed = false;
        auto add = [&](int a) {
            if (a >= 0 && !in[static_cast<std::size_t>(a)]) in[static_cast<std::size_t>(a)] = true, changed = true;
        };
        for (int f = 0; f < g.arrow_count(); ++f) {
            if (!in[static_cast<std::size_t>(f)]) continue;
            add(g.inverse(f));
            for (int h = 0; h < g.arrow_count(); ++h) {
                if (in[static_cast<std::size_t>(h)] && g.src(h) == g.tgt(f)) add(g.compose(h, f));
                if (g.src(h) == g.src(f) && g.inverse(h) >= 0) {
                    const int fi = g.compose(f, g.inverse(h));
                    if (fi >= 0) add(g.compose(h, fi));
                }
            }
        }
    }
    std::vector<int> out;
    for (int a = 0; a < g.arrow_count(); ++a)
        if (in[static_cast<std::size_t>(a)]) out.push_back(a);
    return out;
}

}  // namespace

// ---------------------------------------------------------- FiniteGroupoid

FiniteGroupoid::FiniteGroupoid(std::vector<std::string> objects, std::vector<ArrowSpec> arrows,
                               const std::vector<CompositeSpec>& compose, const std::map<std::string, std::string>& identities)
{
    objects_ = objects;
    std::sort(objects_.begin(), objects_.end());
    for (std::size_t i = 1; i < objects_.size(); ++i)
        if (objects_[i] == objects_[i - 1]) throw GroupoidInputError("objects", "duplicate object id '" + objects_[i] + "'");

    std::vector<std::size_t> order(arrows.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return arrows[a].id < arrows[b].id; });
    for (std::size_t k = 0; k < order.size(); ++k) {
        const ArrowSpec& a = arrows[order[k]];
        const std::string field = "arrows[" + std::to_string(order[k]) + "]";
        if (k > 0 && a.id == arrows_.back()) throw GroupoidInputError(field + ".id", "duplicate arrow id '" + a.id + "'");
        const int s = index_in(objects_, a.src), t = index_in(objects_, a.tgt);
        if (s < 0) throw GroupoidInputError(field + ".src", "unknown object '" + a.src + "'");
        if (t < 0) throw GroupoidInputError(field + ".tgt", "unknown object '" + a.tgt + "'");
        arrows_.push_back(a.id);
        src_.push_back(s);
        tgt_.push_back(t);
    }

    const int n = arrow_count();
    comp_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), kUndefined);
    for (std::size_t k = 0; k < compose.size(); ++k) {
        const CompositeSpec& c = compose[k];
        const std::string field = "compose[" + std::to_string(k) + "]";
        const int g = index_in(arrows_, c.g), f = index_in(arrows_, c.f), gf = index_in(arrows_, c.gf);
        if (g < 0) throw GroupoidInputError(field + "[0]", "unknown arrow '" + c.g + "'");
        if (f < 0) throw GroupoidInputError(field + "[1]", "unknown arrow '" + c.f + "'");
        if (gf < 0) throw GroupoidInputError(field + "[2]", "unknown arrow '" + c.gf + "'");
        int& slot = comp_[static_cast<std::size_t>(g * n + f)];
        if (slot != kUndefined && slot != gf)
            throw GroupoidInputError(field, "conflicting composite for (" + c.g + ", " + c.f + ")");
        slot = gf;
    }
    infer_structure(identities);
}

void FiniteGroupoid::infer_structure(const std::map<std::string, std::string>& identities)
{
    const int n = arrow_count();
    ident_.assign(objects_.size(), kUndefined);
    for (const auto& [obj, arr] : identities) {
        const int x = index_in(objects_, obj), e = index_in(arrows_, arr);
        if (x < 0) throw GroupoidInputError("identities." + obj, "unknown object '" + obj + "'");
        if (e < 0) throw GroupoidInputError("identities." + obj, "unknown arrow '" + arr + "'");
        ident_[static_cast<std::size_t>(x)] = e;
    }
    for (int x = 0; x < object_count(); ++x) {
        if (ident_[static_cast<std::size_t>(x)] != kUndefined) continue;
        for (int e = 0; e < n; ++e) {
            if (src(e) != x || tgt(e) != x) continue;
            bool unit = true;
            for (int f = 0; f < n && unit; ++f) {
                if (tgt(f) == x && compose(e, f) != f) unit = false;
                if (src(f) == x && compose(f, e) != f) unit = false;
            }
            if (unit) {
                ident_[static_cast<std::size_t>(x)] = e;
                break;
            }
        }
    }
    inv_.assign(static_cast<std::size_t>(n), kUndefined);
    for (int g = 0; g < n; ++g) {
        const int es = identity(src(g)), et = identity(tgt(g));
        if (es < 0 || et < 0) continue;
        for (int h = 0; h < n; ++h)
            if (compose(h, g) == es && compose(g, h) == et) {
                inv_[static_cast<std::size_t>(g)] = h;
                break;
            }
    }
}

FiniteGroupoid FiniteGroupoid::build(std::vector<std::string> objects, std::vector<ArrowSpec> arrows,
                                     const std::function<std::optional<std::string>(const std::string&, const std::string&)>& compose)
{
    std::vector<CompositeSpec> table;
    for (const ArrowSpec& g : arrows)
        for (const ArrowSpec& f : arrows)
            if (g.src == f.tgt)
                if (auto gf = compose(g.id, f.id)) table.push_back({g.id, f.id, *gf});
    return FiniteGroupoid(std::move(objects), std::move(arrows), table);
}

int FiniteGroupoid::object_index(const std::string& id) const
{
    return index_in(objects_, id);
}

int FiniteGroupoid::arrow_index(const std::string& id) const
{
    return index_in(arrows_, id);
}

int FiniteGroupoid::compose_checked(int g, int f) const
{
    const int gf = compose(g, f);
    if (gf == kUndefined) throw UndefinedComposite("no composite " + arrow_id(g) + " after " + arrow_id(f));
    return gf;
}

std::size_t FiniteGroupoid::composable_pairs() const
{
    std::size_t count = 0;
    for (int g = 0; g < arrow_count(); ++g)
        for (int f = 0; f < arrow_count(); ++f)
            if (src(g) == tgt(f)) ++count;
    return count;
}

Certification validate_groupoid(const FiniteGroupoid& g)
{
    Certification cert;
    const int n = g.arrow_count();
    cert.add("object set nonempty", "groupoid", g.object_count() > 0);
    {
        Check& c = cert.open("composites only on composable pairs", "groupoid");
        Check& total = cert.open("composition total on composable pairs", "groupoid");
        Check& ends = cert.open("source and target of composites", "groupoid");
        for (int a = 0; a < n; ++a)
            for (int f = 0; f < n; ++f) {
                const int af = g.compose(a, f);
                const std::string w = pair_id(g.arrow_id(a), g.arrow_id(f));
                if (g.src(a) != g.tgt(f)) {
                    if (af >= 0) cert.fail(c, w);
                    continue;
                }
                if (af < 0) cert.fail(total, w);
                else if (g.src(af) != g.src(f) || g.tgt(af) != g.tgt(a)) cert.fail(ends, w);
            }
    }
    {
        Check& c = cert.open("associativity", "groupoid");
        for (int h = 0; h < n; ++h)
            for (int a = 0; a < n; ++a) {
                if (g.src(h) != g.tgt(a)) continue;
                for (int f = 0; f < n; ++f) {
                    if (g.src(a) != g.tgt(f)) continue;
                    const int ha = g.compose(h, a), af = g.compose(a, f);
                    if (ha < 0 || af < 0) continue;
                    if (g.compose(ha, f) != g.compose(h, af))
                        cert.fail(c, '(' + g.arrow_id(h) + ',' + g.arrow_id(a) + ',' + g.arrow_id(f) + ')');
                }
            }
    }
    {
        Check& c = cert.open("identities", "groupoid");
        for (int x = 0; x < g.object_count(); ++x)
            if (g.identity(x) < 0) cert.fail(c, g.object_id(x));
    }
    {
        Check& c = cert.open("inverses", "groupoid");
        for (int a = 0; a < n; ++a)
            if (g.inverse(a) < 0) cert.fail(c, g.arrow_id(a));
    }
    return cert;
}

// ------------------------------------------------------------ subgroupoids

std::vector<int> WideSubgroupoid::arrows() const
{
    std::vector<int> out;
    for (std::size_t a = 0; a < member.size(); ++a)
        if (member[a]) out.push_back(static_cast<int>(a));
    return out;
}

std::size_t WideSubgroupoid::size() const
{
    return static_cast<std::size_t>(std::count(member.begin(), member.end(), true));
}

WideSubgroupoid identities_only(const FiniteGroupoid& g)
{
    WideSubgroupoid n{std::vector<bool>(static_cast<std::size_t>(g.arrow_count()), false)};
    for (int x = 0; x < g.object_count(); ++x)
        if (g.identity(x) >= 0) n.member[static_cast<std::size_t>(g.identity(x))] = true;
    return n;
}

WideSubgroupoid isotropy(const FiniteGroupoid& g)
{
    WideSubgroupoid n{std::vector<bool>(static_cast<std::size_t>(g.arrow_count()), false)};
    for (int a = 0; a < g.arrow_count(); ++a) n.member[static_cast<std::size_t>(a)] = g.is_loop(a);
    return n;
}

Certification check_wide_subgroupoid(const FiniteGroupoid& g, const WideSubgroupoid& n)
{
    Certification cert;
    if (static_cast<int>(n.member.size()) != g.arrow_count()) throw std::invalid_argument("subgroupoid: arrow count");
    {
        Check& c = cert.open("contains identities", "NG0");
        for (int x = 0; x < g.object_count(); ++x)
            if (g.identity(x) < 0 || !n.contains(g.identity(x))) cert.fail(c, g.object_id(x));
    }
    {
        Check& c = cert.open("closed under composition", "NG0");
        for (int a : n.arrows())
            for (int f : n.arrows())
                if (g.src(a) == g.tgt(f) && (g.compose(a, f) < 0 || !n.contains(g.compose(a, f))))
                    cert.fail(c, pair_id(g.arrow_id(a), g.arrow_id(f)));
    }
    {
        Check& c = cert.open("closed under inverses", "NG0");
        for (int a : n.arrows())
            if (g.inverse(a) < 0 || !n.contains(g.inverse(a))) cert.fail(c, g.arrow_id(a));
    }
    return cert;
}

FiniteGroupoid restrict_to(const FiniteGroupoid& g, const WideSubgroupoid& n)
{
    std::vector<ArrowSpec> arrows;
    std::vector<CompositeSpec> table;
    for (int a : n.arrows()) arrows.push_back({g.arrow_id(a), g.object_id(g.src(a)), g.object_id(g.tgt(a))});
    for (int a : n.arrows())
        for (int f : n.arrows()) {
            const int af = g.compose(a, f);
            if (af >= 0 && n.contains(af)) table.push_back({g.arrow_id(a), g.arrow_id(f), g.arrow_id(af)});
        }
    return FiniteGroupoid(g.objects(), std::move(arrows), table);
}

std::vector<std::string> arrow_ids(const FiniteGroupoid& g, const WideSubgroupoid& n)
{
    std::vector<std::string> out;
    for (int a : n.arrows()) out.push_back(g.arrow_id(a));
    return out;
}

// ----------------------------------------------------------------- actions

int GroupoidAction::act(int g, int n) const
{
    if (groupoid.src(g) != anchor[static_cast<std::size_t>(n)])
        throw UndefinedComposite("action: source of " + groupoid.arrow_id(g) + " differs from anchor of " + carrier[static_cast<std::size_t>(n)]);
    const int r = table[static_cast<std::size_t>(g * size() + n)];
    if (r < 0) throw UndefinedComposite("action: no value for " + groupoid.arrow_id(g) + " on " + carrier[static_cast<std::size_t>(n)]);
    return r;
}

Certification check_action(const GroupoidAction& a)
{
    Certification cert;
    const FiniteGroupoid& g = a.groupoid;
    const int m = a.size();
    Check& defined = cert.open("defined exactly on matching anchors", "action");
    Check& anchor = cert.open("anchor of g n is the target of g", "action");
    Check& unit = cert.open("identities act trivially", "action");
    Check& assoc = cert.open("compatible with composition", "action");
    for (int x = 0; x < g.arrow_count(); ++x)
        for (int n = 0; n < m; ++n) {
            const int r = a.table[static_cast<std::size_t>(x * m + n)];
            const std::string w = pair_id(g.arrow_id(x), a.carrier[static_cast<std::size_t>(n)]);
            if ((g.src(x) == a.anchor[static_cast<std::size_t>(n)]) != (r >= 0)) {
                cert.fail(defined, w);
                continue;
            }
            if (r < 0) continue;
            if (a.anchor[static_cast<std::size_t>(r)] != g.tgt(x)) cert.fail(anchor, w);
            if (g.is_identity(x) && r != n) cert.fail(unit, w);
            for (int y = 0; y < g.arrow_count(); ++y) {
                if (g.src(y) != g.tgt(x)) continue;
                const int yx = g.compose(y, x);
                const int lhs = a.table[static_cast<std::size_t>(y * m + r)];
                const int rhs = yx >= 0 ? a.table[static_cast<std::size_t>(yx * m + n)] : -1;
                if (lhs != rhs) cert.fail(assoc, '(' + g.arrow_id(y) + ',' + g.arrow_id(x) + ',' + a.carrier[static_cast<std::size_t>(n)] + ')');
            }
        }
    return cert;
}

GroupoidAction adjoint_action(const FiniteGroupoid& g)
{
    GroupoidAction a{g, {}, {}, {}};
    std::vector<int> loops;
    for (int f = 0; f < g.arrow_count(); ++f)
        if (g.is_loop(f)) {
            loops.push_back(f);
            a.carrier.push_back(g.arrow_id(f));
            a.anchor.push_back(g.src(f));
        }
    const int m = a.size();
    a.table.assign(static_cast<std::size_t>(g.arrow_count() * m), -1);
    for (int x = 0; x < g.arrow_count(); ++x)
        for (int k = 0; k < m; ++k) {
            const int f = loops[static_cast<std::size_t>(k)];
            if (g.src(x) != g.src(f) || g.inverse(x) < 0) continue;
            const int fx = g.compose(f, g.inverse(x));
            const int r = fx >= 0 ? g.compose(x, fx) : -1;
            if (r >= 0) a.table[static_cast<std::size_t>(x * m + k)] = index_in(loops, r);
        }
    return a;
}

GroupoidAction object_action(const FiniteGroupoid& g)
{
    GroupoidAction a{g, g.objects(), {}, {}};
    for (int x = 0; x < g.object_count(); ++x) a.anchor.push_back(x);
    const int m = a.size();
    a.table.assign(static_cast<std::size_t>(g.arrow_count() * m), -1);
    for (int x = 0; x < g.arrow_count(); ++x) a.table[static_cast<std::size_t>(x * m + g.src(x))] = g.tgt(x);
    return a;
}

GroupoidAction left_translation(const FiniteGroupoid& g, const WideSubgroupoid& n)
{
    GroupoidAction a{restrict_to(g, n), g.arrows(), {}, {}};
    for (int f = 0; f < g.arrow_count(); ++f) a.anchor.push_back(g.tgt(f));
    const int m = a.size();
    const std::vector<int> members = n.arrows();
    a.table.assign(static_cast<std::size_t>(a.groupoid.arrow_count() * m), -1);
    for (std::size_t k = 0; k < members.size(); ++k)
        for (int f = 0; f < m; ++f)
            if (g.src(members[k]) == g.tgt(f)) a.table[k * static_cast<std::size_t>(m) + static_cast<std::size_t>(f)] = g.compose(members[k], f);
    return a;
}

NormalVerdict is_normal(const FiniteGroupoid& g, const WideSubgroupoid& n)
{
    const Certification wide = check_wide_subgroupoid(g, n);
    if (!wide.passed()) {
        const Check* c = wide.find(wide.failures().front());
        return {false, c->name + ": " + (c->witnesses.empty() ? std::string() : c->witnesses.front())};
    }
    for (int f : n.arrows())
        if (!g.is_loop(f)) return {false, "NG1: " + g.arrow_id(f)};
    for (int x = 0; x < g.arrow_count(); ++x)
        for (int f : n.arrows()) {
            if (g.src(x) != g.src(f)) continue;
            const int r = g.compose(x, g.compose(f, g.inverse(x)));
            if (!n.contains(r)) return {false, "NG2: Ad(" + g.arrow_id(x) + "," + g.arrow_id(f) + ")"};
        }
    return {true, {}};
}

NormalEnumeration enumerate_normal_subgroupoids(const FiniteGroupoid& g, std::optional<std::size_t> limit)
{
    NormalEnumeration out;
    std::vector<std::vector<int>> orbits;
    const GroupoidAction ad = adjoint_action(g);
    for (const std::vector<int>& cls : orbit_space(ad)) {
        const int rep = g.arrow_index(ad.carrier[static_cast<std::size_t>(cls.front())]);
        if (g.is_identity(rep)) continue;
        std::vector<int> arrows;
        for (int k : cls) arrows.push_back(g.arrow_index(ad.carrier[static_cast<std::size_t>(k)]));
        orbits.push_back(std::move(arrows));
    }
    if (orbits.size() >= 63) throw std::length_error("normal subgroupoid enumeration: too many conjugacy orbits");
    std::set<std::vector<int>> found;
    const std::uint64_t unions = std::uint64_t{1} << orbits.size();
    for (std::uint64_t mask = 0; mask < unions; ++mask) {
        if (limit && out.candidates >= *limit) {
            out.truncated = true;
            break;
        }
        ++out.candidates;
        std::vector<bool> seed(static_cast<std::size_t>(g.arrow_count()), false);
        for (std::size_t k = 0; k < orbits.size(); ++k)
            if (mask >> k & 1U)
                for (int a : orbits[k]) seed[static_cast<std::size_t>(a)] = true;
        found.insert(normal_closure(g, std::move(seed)));
    }
    for (const std::vector<int>& arrows : found) {
        WideSubgroupoid n = from_indices(g, arrows);
        if (is_normal(g, n).normal) out.subgroupoids.push_back(std::move(n));
    }
    return out;
}

std::vector<WideSubgroupoid> enumerate_normal_brute_force(const FiniteGroupoid& g)
{
    std::vector<int> free;
    for (int a = 0; a < g.arrow_count(); ++a)
        if (g.is_loop(a) && !g.is_identity(a)) free.push_back(a);
    if (free.size() > 20) throw std::length_error("brute force: too many isotropy arrows");
    std::vector<std::vector<int>> hits;
    const WideSubgroupoid ids = identities_only(g);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size()); ++mask) {
        WideSubgroupoid n = ids;
        for (std::size_t k = 0; k < free.size(); ++k)
            if (mask >> k & 1U) n.member[static_cast<std::size_t>(free[k])] = true;
        if (is_normal(g, n).normal) hits.push_back(n.arrows());
    }
    std::sort(hits.begin(), hits.end());
    std::vector<WideSubgroupoid> out;
    for (const auto& h : hits) out.push_back(from_indices(g, h));
    return out;
}

std::vector<std::vector<int>> orbit_space(const GroupoidAction& a)
{
    UnionFind uf(a.size());
    for (int x = 0; x < a.groupoid.arrow_count(); ++x)
        for (int n = 0; n < a.size(); ++n) {
            const int r = a.table[static_cast<std::size_t>(x * a.size() + n)];
            if (r >= 0) uf.join(n, r);
        }
    return uf.classes();
}

std::vector<std::vector<int>> right_orbits(const FiniteGroupoid& g, const WideSubgroupoid& n)
{
    UnionFind uf(g.arrow_count());
    for (int f = 0; f < g.arrow_count(); ++f)
        for (int m : n.arrows())
            if (g.tgt(m) == g.src(f) && g.compose(f, m) >= 0) uf.join(f, g.compose(f, m));
    return uf.classes();
}

FiniteGroupoid translation_groupoid(const GroupoidAction& a)
{
    const FiniteGroupoid& g = a.groupoid;
    struct Pair {
        int g, n;
    };
    std::vector<Pair> pairs;
    std::vector<ArrowSpec> arrows;
    for (int x = 0; x < g.arrow_count(); ++x)
        for (int n = 0; n < a.size(); ++n) {
            const int r = a.table[static_cast<std::size_t>(x * a.size() + n)];
            if (r < 0) continue;
            pairs.push_back({x, n});
            arrows.push_back({pair_id(g.arrow_id(x), a.carrier[static_cast<std::size_t>(n)]), a.carrier[static_cast<std::size_t>(n)],
                              a.carrier[static_cast<std::size_t>(r)]});
        }
    std::vector<CompositeSpec> table;
    for (std::size_t i = 0; i < pairs.size(); ++i)
        for (std::size_t j = 0; j < pairs.size(); ++j) {
            const Pair p = pairs[i], q = pairs[j];
            // (x, n)(y, m) = (xy, m) when y m = n
            if (a.table[static_cast<std::size_t>(q.g * a.size() + q.n)] != p.n) continue;
            const int xy = g.compose(p.g, q.g);
            if (xy < 0) continue;
            table.push_back({arrows[i].id, arrows[j].id, pair_id(g.arrow_id(xy), a.carrier[static_cast<std::size_t>(q.n)])});
        }
    return FiniteGroupoid(a.carrier, std::move(arrows), table);
}

QuotientGroupoid quotient_groupoid(const FiniteGroupoid& g, const WideSubgroupoid& n)
{
    const NormalVerdict v = is_normal(g, n);
    if (!v.normal) throw NotNormal("quotient_groupoid: " + v.witness);
    QuotientGroupoid q;
    q.classes = orbit_space(left_translation(g, n));
    std::vector<int> class_of(static_cast<std::size_t>(g.arrow_count()));
    std::vector<ArrowSpec> arrows;
    auto name = [&](std::size_t c) { return '[' + g.arrow_id(q.classes[c].front()) + ']'; };
    for (std::size_t c = 0; c < q.classes.size(); ++c) {
        for (int a : q.classes[c]) class_of[static_cast<std::size_t>(a)] = static_cast<int>(c);
        const int rep = q.classes[c].front();
        arrows.push_back({name(c), g.object_id(g.src(rep)), g.object_id(g.tgt(rep))});
    }
    std::map<std::pair<int, int>, int> comp;
    for (int x = 0; x < g.arrow_count(); ++x)
        for (int f = 0; f < g.arrow_count(); ++f) {
            const int xf = g.compose(x, f);
            if (xf < 0) continue;
            const std::pair<int, int> key{class_of[static_cast<std::size_t>(x)], class_of[static_cast<std::size_t>(f)]};
            auto [it, fresh] = comp.emplace(key, class_of[static_cast<std::size_t>(xf)]);
            if (!fresh && it->second != class_of[static_cast<std::size_t>(xf)])
                throw std::logic_error("quotient_groupoid: composition not well defined on classes");
        }
    std::vector<CompositeSpec> table;
    for (const auto& [key, val] : comp)
        table.push_back({name(static_cast<std::size_t>(key.first)), name(static_cast<std::size_t>(key.second)),
                         name(static_cast<std::size_t>(val))});
    q.groupoid = FiniteGroupoid(g.objects(), std::move(arrows), table);
    for (int a = 0; a < g.arrow_count(); ++a)
        q.projection.push_back(q.groupoid.arrow_index(name(static_cast<std::size_t>(class_of[static_cast<std::size_t>(a)]))));
    return q;
}

bool is_morphism(const FiniteGroupoid& g, const FiniteGroupoid& h, const std::vector<int>& arrow_map)
{
    if (static_cast<int>(arrow_map.size()) != g.arrow_count()) return false;
    for (int m : arrow_map)
        if (m < 0 || m >= h.arrow_count()) return false;
    auto map = [&](int a) { return arrow_map[static_cast<std::size_t>(a)]; };
    for (int x = 0; x < g.object_count(); ++x)
        if (g.identity(x) >= 0 && !h.is_identity(map(g.identity(x)))) return false;
    for (int a = 0; a < g.arrow_count(); ++a)
        for (int f = 0; f < g.arrow_count(); ++f) {
            const int af = g.compose(a, f);
            if (af < 0) continue;
            if (h.src(map(a)) != h.tgt(map(f)) || h.compose(map(a), map(f)) != map(af)) return false;
        }
    return true;
}

std::optional<std::vector<int>> factor_through_quotient(const FiniteGroupoid& g, const WideSubgroupoid& n,
                                                        const QuotientGroupoid& q, const FiniteGroupoid& h,
                                                        const std::vector<int>& arrow_map)
{
    for (int a : n.arrows())
        if (!h.is_identity(arrow_map[static_cast<std::size_t>(a)])) return std::nullopt;
    std::vector<int> induced(static_cast<std::size_t>(q.groupoid.arrow_count()), -1);
    for (int a = 0; a < g.arrow_count(); ++a) {
        int& slot = induced[static_cast<std::size_t>(q.projection[static_cast<std::size_t>(a)])];
        const int m = arrow_map[static_cast<std::size_t>(a)];
        if (slot >= 0 && slot != m) return std::nullopt;
        slot = m;
    }
    if (!is_morphism(q.groupoid, h, induced)) return std::nullopt;
    return induced;
}

std::optional<std::vector<int>> find_isomorphism(const FiniteGroupoid& g, const FiniteGroupoid& h)
{
    if (g.arrow_count() != h.arrow_count() || g.object_count() != h.object_count()) return std::nullopt;
    const int n = g.arrow_count();
    std::vector<int> amap(static_cast<std::size_t>(n), -1), omap(static_cast<std::size_t>(g.object_count()), -1),
        oinv(static_cast<std::size_t>(h.object_count()), -1);
    std::vector<bool> used(static_cast<std::size_t>(n), false);

    std::function<bool(int)> assign = [&](int a) -> bool {
        if (a == n) return true;
        for (int b = 0; b < n; ++b) {
            if (used[static_cast<std::size_t>(b)] || g.is_identity(a) != h.is_identity(b) || g.is_loop(a) != h.is_loop(b)) continue;
            const int gs = g.src(a), gt = g.tgt(a), hs = h.src(b), ht = h.tgt(b);
            std::vector<std::pair<int, int>> bound;
            auto bind = [&](int x, int y) {
                int& ox = omap[static_cast<std::size_t>(x)];
                int& iy = oinv[static_cast<std::size_t>(y)];
                if (ox == y && iy == x) return true;
                if (ox >= 0 || iy >= 0) return false;
                ox = y, iy = x;
                bound.emplace_back(x, y);
                return true;
            };
            const bool ok = bind(gs, hs) && bind(gt, ht);
            if (ok) {
                amap[static_cast<std::size_t>(a)] = b;
                used[static_cast<std::size_t>(b)] = true;
                bool consistent = true;
                for (int c = 0; c <= a && consistent; ++c) {
                    const int mc = amap[static_cast<std::size_t>(c)];
                    for (auto [x, y] : {std::pair{a, c}, std::pair{c, a}}) {
                        const int xy = g.compose(x, y);
                        if (xy < 0 || xy > a) continue;
                        const int mx = x == a ? b : mc, my = y == a ? b : mc;
                        if (h.compose(mx, my) != amap[static_cast<std::size_t>(xy)]) consistent = false;
                    }
                    // composites landing on a were checked when their factors were placed
                    for (int d = 0; d <= a && consistent; ++d) {
                        const int cd = g.compose(c, d);
                        if (cd == a && h.compose(mc, amap[static_cast<std::size_t>(d)]) != b) consistent = false;
                    }
                }
                if (consistent && assign(a + 1)) return true;
                used[static_cast<std::size_t>(b)] = false;
                amap[static_cast<std::size_t>(a)] = -1;
            }
            for (auto [x, y] : bound) omap[static_cast<std::size_t>(x)] = -1, oinv[static_cast<std::size_t>(y)] = -1;
        }
        return false;
    };
    if (!assign(0)) return std::nullopt;
    if (!is_morphism(g, h, amap)) return std::nullopt;
    return amap;
}

}  // namespace hopfalgd
