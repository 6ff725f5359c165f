#include "soergel/rootdata.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace soergel {

namespace {

long dot(const IntVec& a, const IntVec& b) {
    long s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

IntMat identity_mat(int n) {
    IntMat m(static_cast<size_t>(n), IntVec(static_cast<size_t>(n), 0));
    for (int i = 0; i < n; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    return m;
}

IntMat mat_mul_int(const IntMat& a, const IntMat& b) {
    size_t n = a.size();
    IntMat r(n, IntVec(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) {
            if (a[i][k] == 0) continue;
            for (size_t j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

// Standard Cartan matrices, entry [i][j] = <alpha_i, alpha_j^vee>.
IntMat cartan_for(PresetFamily fam, int n) {
    auto tridiag = [](int m) {
        IntMat c(static_cast<size_t>(m), IntVec(static_cast<size_t>(m), 0));
        for (int i = 0; i < m; ++i) {
            c[static_cast<size_t>(i)][static_cast<size_t>(i)] = 2;
            if (i + 1 < m) {
                c[static_cast<size_t>(i)][static_cast<size_t>(i + 1)] = -1;
                c[static_cast<size_t>(i + 1)][static_cast<size_t>(i)] = -1;
            }
        }
        return c;
    };
    switch (fam) {
        case PresetFamily::GL: return tridiag(n - 1);
        case PresetFamily::A: return tridiag(n);
        case PresetFamily::B: {
            // last simple root short
            IntMat c = tridiag(n);
            c[static_cast<size_t>(n - 2)][static_cast<size_t>(n - 1)] = -2;
            return c;
        }
        case PresetFamily::C: {
            // last simple root long
            IntMat c = tridiag(n);
            c[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 2)] = -2;
            return c;
        }
        case PresetFamily::D: {
            IntMat c = tridiag(n);
            // fork: alpha_n attaches to alpha_{n-2}
            c[static_cast<size_t>(n - 2)][static_cast<size_t>(n - 1)] = 0;
            c[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 2)] = 0;
            c[static_cast<size_t>(n - 3)][static_cast<size_t>(n - 1)] = -1;
            c[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 3)] = -1;
            return c;
        }
        case PresetFamily::G2:
            // first simple root short
            return {{2, -1}, {-3, 2}};
        case PresetFamily::F4:
            // alpha_1, alpha_2 long; alpha_3, alpha_4 short
            return {{2, -1, 0, 0}, {-1, 2, -2, 0}, {0, -1, 2, -1}, {0, 0, -1, 2}};
    }
    throw config_error("unknown preset family");
}

} // namespace

long RootDatum::pair_root(int i, const IntVec& y) const {
    return dot(simple_roots[static_cast<size_t>(i)], y);
}

IntVec RootDatum::delta(int i) const {
    // First lattice basis vector (index order) pairing to 1 with alpha_i.
    for (int k = 0; k < dim; ++k) {
        if (simple_roots[static_cast<size_t>(i)][static_cast<size_t>(k)] == 1) {
            IntVec d(static_cast<size_t>(dim), 0);
            d[static_cast<size_t>(k)] = 1;
            return d;
        }
    }
    throw invariant_error("no basis vector pairs to 1 with alpha_" + std::to_string(i + 1));
}

IntVec RootDatum::reflect_y(int i, const IntVec& y) const {
    IntVec r = y;
    long c = pair_root(i, y);
    const IntVec& cr = simple_coroots[static_cast<size_t>(i)];
    for (int k = 0; k < dim; ++k) r[static_cast<size_t>(k)] -= c * cr[static_cast<size_t>(k)];
    return r;
}

int RootDatum::num_positive_roots() const {
    // Orbit of the simple roots in X under the reflections
    // s_j(x) = x - <x, alpha_j^vee> alpha_j.
    std::set<IntVec> roots;
    std::vector<IntVec> frontier;
    for (const auto& a : simple_roots) {
        roots.insert(a);
        frontier.push_back(a);
        IntVec na(a.size());
        for (size_t k = 0; k < a.size(); ++k) na[k] = -a[k];
        roots.insert(na);
        frontier.push_back(na);
    }
    while (!frontier.empty()) {
        std::vector<IntVec> next;
        for (const auto& x : frontier) {
            for (int j = 0; j < nsimple; ++j) {
                long c = dot(x, simple_coroots[static_cast<size_t>(j)]);
                IntVec r = x;
                for (int k = 0; k < dim; ++k)
                    r[static_cast<size_t>(k)] -= c * simple_roots[static_cast<size_t>(j)][static_cast<size_t>(k)];
                if (roots.insert(r).second) next.push_back(r);
            }
        }
        frontier = std::move(next);
    }
    require(roots.size() % 2 == 0, "root system has odd cardinality");
    return static_cast<int>(roots.size() / 2);
}

bool RootDatum::is_good_prime(long ell) const {
    switch (family) {
        case PresetFamily::GL:
        case PresetFamily::A:
            return true;
        case PresetFamily::B:
        case PresetFamily::C:
        case PresetFamily::D:
            return ell != 2;
        case PresetFamily::G2:
        case PresetFamily::F4:
            return ell != 2 && ell != 3;
    }
    return false;
}

bool RootDatum::coinvariant_prime_ok(long ell) const {
    if (!is_good_prime(ell)) return false;
    if (family == PresetFamily::A) return (rank_param + 1) % ell != 0;
    return true;
}

RootDatum build_root_datum(const std::string& preset) {
    PresetFamily fam;
    int n = 0;
    std::string head, tail;
    for (char c : preset)
        (std::isdigit(static_cast<unsigned char>(c)) ? tail : head) += c;
    if (tail.empty()) throw config_error("preset needs a rank, e.g. A2, B3, GL3: got '" + preset + "'");
    n = std::stoi(tail);
    if (head == "GL") fam = PresetFamily::GL;
    else if (head == "A") fam = PresetFamily::A;
    else if (head == "B") fam = PresetFamily::B;
    else if (head == "C") fam = PresetFamily::C;
    else if (head == "D") fam = PresetFamily::D;
    else if (head == "G") fam = PresetFamily::G2;
    else if (head == "F") fam = PresetFamily::F4;
    else throw config_error("unsupported preset '" + preset + "'");

    auto check = [&](bool ok, const std::string& msg) {
        if (!ok) throw config_error("preset '" + preset + "': " + msg);
    };
    switch (fam) {
        case PresetFamily::GL: check(n >= 2 && n <= 8, "GL rank must be 2..8"); break;
        case PresetFamily::A: check(n >= 1 && n <= 7, "A rank must be 1..7"); break;
        case PresetFamily::B: check(n >= 2 && n <= 5, "B rank must be 2..5"); break;
        case PresetFamily::C: check(n >= 2 && n <= 5, "C rank must be 2..5"); break;
        case PresetFamily::D: check(n >= 4 && n <= 5, "D rank must be 4..5"); break;
        case PresetFamily::G2: check(n == 2, "G preset is G2"); break;
        case PresetFamily::F4: check(n == 4, "F preset is F4"); break;
    }

    RootDatum d;
    d.label = preset;
    d.family = fam;
    d.rank_param = n;
    if (fam == PresetFamily::GL) {
        d.dim = n;
        d.nsimple = n - 1;
        for (int i = 0; i + 1 < n; ++i) {
            IntVec root(static_cast<size_t>(n), 0), coroot(static_cast<size_t>(n), 0);
            root[static_cast<size_t>(i)] = 1;
            root[static_cast<size_t>(i + 1)] = -1;
            coroot = root;
            d.simple_roots.push_back(root);
            d.simple_coroots.push_back(coroot);
        }
    } else {
        int m = (fam == PresetFamily::G2) ? 2 : (fam == PresetFamily::F4 ? 4 : n);
        d.dim = m;
        d.nsimple = m;
        IntMat cartan = cartan_for(fam, n);
        for (int i = 0; i < m; ++i) {
            IntVec root(static_cast<size_t>(m), 0);
            root[static_cast<size_t>(i)] = 1; // X basis = simple roots
            d.simple_roots.push_back(root);
            IntVec coroot(static_cast<size_t>(m), 0);
            for (int k = 0; k < m; ++k) coroot[static_cast<size_t>(k)] = cartan[static_cast<size_t>(k)][static_cast<size_t>(i)];
            d.simple_coroots.push_back(coroot);
        }
    }
    d.cartan.assign(static_cast<size_t>(d.nsimple), IntVec(static_cast<size_t>(d.nsimple), 0));
    for (int i = 0; i < d.nsimple; ++i)
        for (int j = 0; j < d.nsimple; ++j)
            d.cartan[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                dot(d.simple_roots[static_cast<size_t>(i)], d.simple_coroots[static_cast<size_t>(j)]);
    // invariants
    for (int i = 0; i < d.nsimple; ++i) {
        require(d.cartan[static_cast<size_t>(i)][static_cast<size_t>(i)] == 2, "cartan diagonal must be 2");
        for (int j = 0; j < d.nsimple; ++j)
            if (i != j) require(d.cartan[static_cast<size_t>(i)][static_cast<size_t>(j)] <= 0, "cartan off-diagonal must be <= 0");
    }
    // reflection matrices on Y
    for (int i = 0; i < d.nsimple; ++i) {
        IntMat m = identity_mat(d.dim);
        for (int k = 0; k < d.dim; ++k) {
            IntVec ek(static_cast<size_t>(d.dim), 0);
            ek[static_cast<size_t>(k)] = 1;
            IntVec img = d.reflect_y(i, ek);
            for (int r = 0; r < d.dim; ++r) m[static_cast<size_t>(r)][static_cast<size_t>(k)] = img[static_cast<size_t>(r)];
        }
        d.refl_y.push_back(m);
    }
    return d;
}

// --- WeylGroup --------------------------------------------------------------

WeylGroup::WeylGroup(const RootDatum& datum, int cap) : datum_(datum) {
    const int ns = datum_.nsimple;
    std::map<IntMat, int> index_of;
    std::vector<IntMat> mats;
    std::vector<int> lengths;

    IntMat id = identity_mat(datum_.dim);
    index_of[id] = 0;
    mats.push_back(id);
    lengths.push_back(0);
    std::vector<int> frontier{0};
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int w : frontier) {
            for (int s = 0; s < ns; ++s) {
                IntMat m = mat_mul_int(datum_.refl_y[static_cast<size_t>(s)], mats[static_cast<size_t>(w)]);
                auto it = index_of.find(m);
                if (it == index_of.end()) {
                    int idx = static_cast<int>(mats.size());
                    if (idx >= cap)
                        throw budget_error("Weyl group larger than the safety cap (" + std::to_string(cap) + ")");
                    index_of[m] = idx;
                    mats.push_back(std::move(m));
                    lengths.push_back(lengths[static_cast<size_t>(w)] + 1);
                    next.push_back(idx);
                }
            }
        }
        frontier = std::move(next);
    }
    n_ = static_cast<int>(mats.size());

    // multiplication tables on provisional indices
    std::vector<std::vector<int>> left(static_cast<size_t>(ns), std::vector<int>(static_cast<size_t>(n_)));
    std::vector<std::vector<int>> right(static_cast<size_t>(ns), std::vector<int>(static_cast<size_t>(n_)));
    for (int w = 0; w < n_; ++w)
        for (int s = 0; s < ns; ++s) {
            left[static_cast<size_t>(s)][static_cast<size_t>(w)] =
                index_of.at(mat_mul_int(datum_.refl_y[static_cast<size_t>(s)], mats[static_cast<size_t>(w)]));
            right[static_cast<size_t>(s)][static_cast<size_t>(w)] =
                index_of.at(mat_mul_int(mats[static_cast<size_t>(w)], datum_.refl_y[static_cast<size_t>(s)]));
        }

    // canonical (lexicographically least) reduced words: repeatedly strip the
    // smallest left descent
    std::vector<std::vector<int>> words(static_cast<size_t>(n_));
    std::vector<int> order(static_cast<size_t>(n_));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return lengths[static_cast<size_t>(a)] < lengths[static_cast<size_t>(b)];
    });
    for (int w : order) {
        if (lengths[static_cast<size_t>(w)] == 0) continue;
        for (int s = 0; s < ns; ++s) {
            int sw = left[static_cast<size_t>(s)][static_cast<size_t>(w)];
            if (lengths[static_cast<size_t>(sw)] < lengths[static_cast<size_t>(w)]) {
                words[static_cast<size_t>(w)].push_back(s);
                const auto& rest = words[static_cast<size_t>(sw)];
                words[static_cast<size_t>(w)].insert(words[static_cast<size_t>(w)].end(), rest.begin(), rest.end());
                break;
            }
        }
        require(static_cast<int>(words[static_cast<size_t>(w)].size()) == lengths[static_cast<size_t>(w)],
                "canonical word length mismatch");
    }

    // final deterministic order: (length, word lex)
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (lengths[static_cast<size_t>(a)] != lengths[static_cast<size_t>(b)])
            return lengths[static_cast<size_t>(a)] < lengths[static_cast<size_t>(b)];
        return words[static_cast<size_t>(a)] < words[static_cast<size_t>(b)];
    });
    std::vector<int> newindex(static_cast<size_t>(n_));
    for (int i = 0; i < n_; ++i) newindex[static_cast<size_t>(order[static_cast<size_t>(i)])] = i;

    mats_.resize(static_cast<size_t>(n_));
    length_.resize(static_cast<size_t>(n_));
    words_.resize(static_cast<size_t>(n_));
    left_.assign(static_cast<size_t>(ns), std::vector<int>(static_cast<size_t>(n_)));
    right_.assign(static_cast<size_t>(ns), std::vector<int>(static_cast<size_t>(n_)));
    for (int old = 0; old < n_; ++old) {
        int nw = newindex[static_cast<size_t>(old)];
        mats_[static_cast<size_t>(nw)] = mats[static_cast<size_t>(old)];
        length_[static_cast<size_t>(nw)] = lengths[static_cast<size_t>(old)];
        words_[static_cast<size_t>(nw)] = words[static_cast<size_t>(old)];
        for (int s = 0; s < ns; ++s) {
            left_[static_cast<size_t>(s)][static_cast<size_t>(nw)] =
                newindex[static_cast<size_t>(left[static_cast<size_t>(s)][static_cast<size_t>(old)])];
            right_[static_cast<size_t>(s)][static_cast<size_t>(nw)] =
                newindex[static_cast<size_t>(right[static_cast<size_t>(s)][static_cast<size_t>(old)])];
        }
    }
    require(length_[0] == 0, "identity must have index 0");

    simple_.resize(static_cast<size_t>(ns));
    for (int s = 0; s < ns; ++s) simple_[static_cast<size_t>(s)] = left_[static_cast<size_t>(s)][0];

    // inverses: apply the reversed word
    inv_.resize(static_cast<size_t>(n_));
    for (int w = 0; w < n_; ++w) {
        int x = 0;
        const auto& wd = words_[static_cast<size_t>(w)];
        for (auto it = wd.rbegin(); it != wd.rend(); ++it) x = right_[static_cast<size_t>(*it)][static_cast<size_t>(x)];
        inv_[static_cast<size_t>(w)] = x;
        require(length_[static_cast<size_t>(x)] == length_[static_cast<size_t>(w)], "inverse length mismatch");
    }

    // longest element: unique element of maximal length
    int maxlen = *std::max_element(length_.begin(), length_.end());
    std::vector<int> longest;
    for (int w = 0; w < n_; ++w)
        if (length_[static_cast<size_t>(w)] == maxlen) longest.push_back(w);
    require(longest.size() == 1, "longest element is not unique");
    w0_ = longest[0];

    // Bruhat order, filled by length of the larger element:
    // x <= y iff x == y, or (with s the first left descent of y)
    // sx <= sy when sx < x, and x <= sy otherwise.
    bruhat_.assign(static_cast<size_t>(n_), std::vector<char>(static_cast<size_t>(n_), 0));
    for (int y = 0; y < n_; ++y) {
        bruhat_[static_cast<size_t>(y)][static_cast<size_t>(y)] = 1;
        if (length_[static_cast<size_t>(y)] == 0) continue;
        int s = words_[static_cast<size_t>(y)][0];
        int sy = left_[static_cast<size_t>(s)][static_cast<size_t>(y)];
        for (int x = 0; x < n_; ++x) {
            if (x == y) continue;
            if (length_[static_cast<size_t>(x)] >= length_[static_cast<size_t>(y)]) continue;
            int sx = left_[static_cast<size_t>(s)][static_cast<size_t>(x)];
            bool less = (length_[static_cast<size_t>(sx)] < length_[static_cast<size_t>(x)])
                            ? bruhat_[static_cast<size_t>(sx)][static_cast<size_t>(sy)] != 0
                            : bruhat_[static_cast<size_t>(x)][static_cast<size_t>(sy)] != 0;
            bruhat_[static_cast<size_t>(x)][static_cast<size_t>(y)] = less ? 1 : 0;
        }
    }
}

int WeylGroup::multiply(int x, int y) const {
    int r = x;
    for (int s : words_[static_cast<size_t>(y)]) r = right_[static_cast<size_t>(s)][static_cast<size_t>(r)];
    return r;
}

std::string WeylGroup::word_string(int w) const {
    const auto& wd = words_[static_cast<size_t>(w)];
    if (wd.empty()) return "e";
    std::ostringstream os;
    for (size_t i = 0; i < wd.size(); ++i) {
        if (i) os << ".";
        os << wd[i] + 1;
    }
    return os.str();
}

int WeylGroup::from_word(const std::vector<int>& word) const {
    int r = 0;
    for (int s : word) {
        require(s >= 0 && s < nsimple(), "letter out of range");
        r = right_[static_cast<size_t>(s)][static_cast<size_t>(r)];
    }
    return r;
}

std::vector<int> WeylGroup::bruhat_interval_below(int y) const {
    std::vector<int> out;
    for (int x = 0; x < n_; ++x)
        if (bruhat_leq(x, y)) out.push_back(x);
    return out;
}

bool WeylGroup::bruhat_leq_subword(int x, int y) const {
    if (length(x) > length(y)) return false;
    const auto& wy = word(y);
    const auto& wx = word(x);
    // does some subword of wy multiply to x with length(x) letters?
    // scan greedily over all subwords via DFS on (position in wy, prefix elt)
    std::vector<std::pair<int, int>> stack{{0, 0}};
    std::set<std::pair<int, int>> seen;
    while (!stack.empty()) {
        auto [pos, elt] = stack.back();
        stack.pop_back();
        if (elt == x) return true;
        if (pos >= static_cast<int>(wy.size())) continue;
        if (!seen.insert({pos, elt}).second) continue;
        stack.push_back({pos + 1, elt});
        stack.push_back({pos + 1, right_mult(elt, wy[static_cast<size_t>(pos)])});
    }
    (void)wx;
    return false;
}

} // namespace soergel
