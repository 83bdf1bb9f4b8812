#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace spunfib {

// Permutation of {0,1,2,3}, used as the vertex map of a face gluing.
class Perm4 {
public:
    Perm4() : img_{0, 1, 2, 3} {}
    Perm4(int a, int b, int c, int d) : img_{static_cast<uint8_t>(a), static_cast<uint8_t>(b),
                                             static_cast<uint8_t>(c), static_cast<uint8_t>(d)} {
        check();
    }
    explicit Perm4(const std::array<uint8_t, 4>& img) : img_(img) { check(); }

    int operator[](int i) const { return img_[i]; }

    Perm4 inverse() const {
        std::array<uint8_t, 4> r{};
        for (int i = 0; i < 4; ++i) r[img_[i]] = static_cast<uint8_t>(i);
        return Perm4(r);
    }

    // (a * b)[i] = a[b[i]]
    friend Perm4 operator*(const Perm4& a, const Perm4& b) {
        std::array<uint8_t, 4> r{};
        for (int i = 0; i < 4; ++i) r[i] = static_cast<uint8_t>(a[b[i]]);
        return Perm4(r);
    }

    bool operator==(const Perm4& o) const { return img_ == o.img_; }
    bool operator!=(const Perm4& o) const { return img_ != o.img_; }
    bool operator<(const Perm4& o) const { return img_ < o.img_; }

    // +1 for even, -1 for odd.
    int sign() const {
        int s = 1;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (img_[i] > img_[j]) s = -s;
        return s;
    }

    bool is_identity() const { return img_ == std::array<uint8_t, 4>{0, 1, 2, 3}; }

    std::string str() const {
        std::string s;
        for (int i = 0; i < 4; ++i) s += static_cast<char>('0' + img_[i]);
        return s;
    }

    // Transposition (a b).
    static Perm4 transposition(int a, int b) {
        std::array<uint8_t, 4> r{0, 1, 2, 3};
        std::swap(r[a], r[b]);
        return Perm4(r);
    }

    // Enumerate all 24 permutations.
    static const std::array<Perm4, 24>& all();

private:
    std::array<uint8_t, 4> img_;

    void check() const {
        int seen = 0;
        for (int i = 0; i < 4; ++i) {
            if (img_[i] > 3) throw std::invalid_argument("Perm4: entry out of range");
            seen |= 1 << img_[i];
        }
        if (seen != 0xF) throw std::invalid_argument("Perm4: not a permutation");
    }
};

} // namespace spunfib
