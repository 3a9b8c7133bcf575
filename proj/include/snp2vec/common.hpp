#pragma once

#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace snp2vec {

// ---------------------------------------------------------------------------
// Error hierarchy. Every failure carries a category so the CLI can map it to
// an exit code and a human-readable prefix.
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
    virtual const char* category() const noexcept { return "error"; }
};

class ParseError : public Error {
  public:
    using Error::Error;
    const char* category() const noexcept override { return "parse"; }
};

class BoundsError : public Error {
  public:
    using Error::Error;
    const char* category() const noexcept override { return "bounds"; }
};

class ConfigError : public Error {
  public:
    using Error::Error;
    const char* category() const noexcept override { return "config"; }
};

class IoError : public Error {
  public:
    using Error::Error;
    const char* category() const noexcept override { return "io"; }
};

class DataError : public Error {
  public:
    using Error::Error;
    const char* category() const noexcept override { return "data"; }
};

// ---------------------------------------------------------------------------
// Deterministic RNG. mt19937_64 has a standard-pinned sequence; all derived
// draws below are hand-rolled so corpora and checkpoints are reproducible on
// any platform. Streams for parallel work are derived via splitmix64 so that
// (seed, stream index) always names the same stream.
// ---------------------------------------------------------------------------

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline uint64_t derive_seed(uint64_t seed, uint64_t stream) {
    return splitmix64(seed ^ splitmix64(stream + 0x51aC5EEDULL));
}

class Rng {
  public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t next_u64() { return engine_(); }

    // uniform in [0, 1) with 53 random bits
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // uniform integer in [lo, hi] inclusive
    uint64_t uniform_int(uint64_t lo, uint64_t hi) {
        if (hi < lo) throw BoundsError("uniform_int: hi < lo");
        uint64_t span = hi - lo + 1;
        if (span == 0) return engine_();  // full range
        // multiply-shift mapping; bias is < 2^-64 * span, irrelevant here
        unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * span;
        return lo + static_cast<uint64_t>(m >> 64);
    }

    // index into a weight vector; weights need not be normalized
    size_t categorical(const double* weights, size_t n) {
        double total = 0.0;
        for (size_t i = 0; i < n; ++i) total += weights[i];
        double u = uniform() * total;
        double acc = 0.0;
        for (size_t i = 0; i < n; ++i) {
            acc += weights[i];
            if (u < acc) return i;
        }
        return n - 1;  // u landed on the accumulated rounding tail
    }

    // Box-Muller, hand-rolled so the value stream is implementation-independent
    double normal(double mean = 0.0, double stddev = 1.0) {
        if (have_spare_) {
            have_spare_ = false;
            return mean + stddev * spare_;
        }
        double u1 = 0.0;
        do { u1 = uniform(); } while (u1 <= 0.0);
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return mean + stddev * r * std::cos(theta);
    }

  private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// ---------------------------------------------------------------------------
// UTF-8 codec for the SNP character alphabet (code points above U+00FF are
// two bytes). Decoding validates and reports the byte offset on failure.
// ---------------------------------------------------------------------------

inline void utf8_append(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

inline std::string utf8_encode(const std::u32string& s) {
    std::string out;
    out.reserve(s.size());
    for (char32_t cp : s) utf8_append(out, cp);
    return out;
}

std::u32string utf8_decode(std::string_view bytes);

// ---------------------------------------------------------------------------
// Little-endian binary IO helpers for the SNPM / SNPC file formats.
// ---------------------------------------------------------------------------

namespace bin {

template <typename T>
void write_le(std::ostream& os, T value) {
    static_assert(std::is_trivially_copyable_v<T>);
    unsigned char buf[sizeof(T)];
    uint64_t bits = 0;
    std::memcpy(&bits, &value, sizeof(T));
    for (size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xFF);
    os.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <typename T>
T read_le(std::istream& is) {
    static_assert(std::is_trivially_copyable_v<T>);
    unsigned char buf[sizeof(T)];
    is.read(reinterpret_cast<char*>(buf), sizeof(T));
    if (!is) throw IoError("unexpected end of binary stream");
    uint64_t bits = 0;
    for (size_t i = 0; i < sizeof(T); ++i) bits |= static_cast<uint64_t>(buf[i]) << (8 * i);
    T value;
    std::memcpy(&value, &bits, sizeof(T));
    return value;
}

inline void write_string(std::ostream& os, const std::string& s) {
    write_le<uint32_t>(os, static_cast<uint32_t>(s.size()));
    os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

inline std::string read_string(std::istream& is) {
    uint32_t n = read_le<uint32_t>(is);
    std::string s(n, '\0');
    is.read(s.data(), n);
    if (!is) throw IoError("unexpected end of binary stream");
    return s;
}

}  // namespace bin

// Stable float formatting for CSV/JSON outputs (shortest round-trip form).
std::string format_double(double v);

}  // namespace snp2vec
