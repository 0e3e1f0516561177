#ifndef ETAFORGE_TENSOR_HPP
#define ETAFORGE_TENSOR_HPP

#include "etaforge/jet.hpp"

#include <initializer_list>
#include <vector>

namespace etaforge {

// Dense tensor over a fixed 3-dimensional space.  Entries are whatever T is:
// exact rationals for curvature data at the origin, jets for fields.
template <typename T>
class Tensor {
public:
    Tensor() : rank_(0), v_(1) {}
    explicit Tensor(int rank) : rank_(rank), v_(pow3(rank)) {}

    int rank() const { return rank_; }
    int size() const { return (int)v_.size(); }

    template <typename... I>
    T& operator()(I... idx) {
        static_assert(sizeof...(idx) <= 5);
        return v_[offset({(int)idx...})];
    }
    template <typename... I>
    const T& operator()(I... idx) const {
        return v_[offset({(int)idx...})];
    }

    T& flat(int i) { return v_[i]; }
    const T& flat(int i) const { return v_[i]; }

    // decode flat index into per-slot indices
    std::vector<int> unflatten(int i) const {
        std::vector<int> idx(rank_);
        for (int s = rank_ - 1; s >= 0; --s) { idx[s] = i % 3; i /= 3; }
        return idx;
    }

    bool zero() const {
        for (const auto& x : v_)
            if (!entry_is_zero(x)) return false;
        return true;
    }

    friend Tensor operator+(const Tensor& a, const Tensor& b) {
        Tensor r(a.rank_);
        for (int i = 0; i < a.size(); ++i) r.v_[i] = a.v_[i] + b.v_[i];
        return r;
    }
    friend Tensor operator-(const Tensor& a, const Tensor& b) {
        Tensor r(a.rank_);
        for (int i = 0; i < a.size(); ++i) r.v_[i] = a.v_[i] - b.v_[i];
        return r;
    }
    bool operator==(const Tensor& o) const {
        if (rank_ != o.rank_) return false;
        for (int i = 0; i < size(); ++i)
            if (!(v_[i] == o.v_[i])) return false;
        return true;
    }

private:
    static bool entry_is_zero(const Rat& x) { return is_zero(x); }
    static bool entry_is_zero(const Jet3& x) { return x.zero(); }
    static bool entry_is_zero(const CJet3& x) { return x.zero(); }

    static int pow3(int r) {
        int n = 1;
        for (int k = 0; k < r; ++k) n *= 3;
        return n;
    }
    int offset(std::initializer_list<int> idx) const {
        int o = 0;
        for (int i : idx) o = o * 3 + i;
        return o;
    }

    int rank_;
    std::vector<T> v_;
};

using TensorC = Tensor<Rat>;   // constant tensor at the origin
using TensorJ = Tensor<Jet3>;  // jet-valued tensor field

// Totally antisymmetric symbol, +1 on (0,1,2).
inline int eps3(int a, int b, int c) {
    if (a == b || b == c || a == c) return 0;
    return ((b - a + 3) % 3 == 1) ? 1 : -1;
}

inline int kronecker(int a, int b) { return a == b ? 1 : 0; }

// Public-facing tensor-valued jet with declared index variances
// (true = upper).  Thin wrapper; the variance list is bookkeeping.
struct TensorJet {
    Tensor<Jet3> t;
    std::vector<bool> upper;

    TensorJet() = default;
    TensorJet(Tensor<Jet3> tt, std::vector<bool> up) : t(std::move(tt)), upper(std::move(up)) {}
};

} // namespace etaforge

#endif
