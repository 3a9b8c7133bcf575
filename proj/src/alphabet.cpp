#include "snp2vec/alphabet.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>

namespace snp2vec {

namespace {

// Homozygous letters as published; index matches the Allele enum order.
constexpr std::array<char32_t, kAlleleCount> kHomozygousChar = {
    U'A',  // A/A
    U'B',  // AI/AI
    U'C',  // C/C
    U'D',  // CI/CI
    U'X',  // DEL/DEL
    U'G',  // G/G
    U'H',  // GI/GI
    U'N',  // N/N
    U'O',  // NI/NI
    U'T',  // T/T
    U'U',  // TI/TI
};

constexpr char32_t kHeterozygousBase = U'Ā';

struct CodecTables {
    std::vector<SnpToken> alphabet;              // canonical order, 66 entries
    std::array<char32_t, kSnpTokenCount> to_char{};
    std::map<char32_t, SnpToken> from_char;
    std::array<std::array<uint8_t, kAlleleCount>, kAlleleCount> pair_index{};

    CodecTables() {
        alphabet.reserve(kSnpTokenCount);
        char32_t next_het = kHeterozygousBase;
        size_t idx = 0;
        for (size_t i = 0; i < kAlleleCount; ++i) {
            for (size_t j = i; j < kAlleleCount; ++j) {
                SnpToken t{static_cast<Allele>(i), static_cast<Allele>(j)};
                alphabet.push_back(t);
                char32_t c = (i == j) ? kHomozygousChar[i] : next_het++;
                to_char[idx] = c;
                from_char.emplace(c, t);
                pair_index[i][j] = static_cast<uint8_t>(idx);
                pair_index[j][i] = static_cast<uint8_t>(idx);
                ++idx;
            }
        }
    }
};

const CodecTables& tables() {
    static const CodecTables t;
    return t;
}

}  // namespace

std::string_view allele_name(Allele a) { return kAlleleNames[static_cast<size_t>(a)]; }

std::optional<Allele> allele_from_name(std::string_view name) {
    for (size_t i = 0; i < kAlleleCount; ++i) {
        if (kAlleleNames[i] == name) return static_cast<Allele>(i);
    }
    return std::nullopt;
}

std::optional<Allele> allele_from_base(char base) {
    switch (std::toupper(static_cast<unsigned char>(base))) {
        case 'A': return Allele::A;
        case 'C': return Allele::C;
        case 'G': return Allele::G;
        case 'T': return Allele::T;
        case 'N': return Allele::N;
        default: return std::nullopt;
    }
}

Allele insertion_after(Allele base) {
    switch (base) {
        case Allele::A: return Allele::AI;
        case Allele::C: return Allele::CI;
        case Allele::G: return Allele::GI;
        case Allele::T: return Allele::TI;
        case Allele::N: return Allele::NI;
        default: throw BoundsError("insertion_after: not a base allele: " + std::string(allele_name(base)));
    }
}

SnpToken make_snp_token(Allele a, Allele b) {
    if (b < a) std::swap(a, b);
    return SnpToken{a, b};
}

std::string snp_token_name(SnpToken t) {
    std::string s(allele_name(t.first));
    s.push_back('/');
    s.append(allele_name(t.second));
    return s;
}

const std::vector<SnpToken>& enumerate_alphabet() { return tables().alphabet; }

size_t snp_token_index(SnpToken t) {
    return tables().pair_index[static_cast<size_t>(t.first)][static_cast<size_t>(t.second)];
}

Zygosity classify_zygosity(SnpToken t, Allele reference) {
    if (t.first != t.second) return Zygosity::Heterozygous;
    return t.first == reference ? Zygosity::WildType : Zygosity::Homozygous;
}

char32_t encode_char(SnpToken t) { return tables().to_char[snp_token_index(t)]; }

SnpToken decode_char(char32_t c) {
    const auto& m = tables().from_char;
    auto it = m.find(c);
    if (it == m.end()) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "U+%04X", static_cast<unsigned>(c));
        throw ParseError(std::string("code point outside the SNP alphabet: ") + buf);
    }
    return it->second;
}

bool is_alphabet_char(char32_t c) { return tables().from_char.count(c) != 0; }

char32_t haploid_char(Allele a) { return kHomozygousChar[static_cast<size_t>(a)]; }

std::string encode_tokens(const std::vector<SnpToken>& tokens) {
    std::string out;
    out.reserve(tokens.size());
    for (SnpToken t : tokens) utf8_append(out, encode_char(t));
    return out;
}

std::vector<SnpToken> decode_tokens(std::string_view utf8_text) {
    std::u32string cps = utf8_decode(utf8_text);
    std::vector<SnpToken> out;
    out.reserve(cps.size());
    for (char32_t c : cps) out.push_back(decode_char(c));
    return out;
}

void write_codec_table(std::ostream& os) {
    for (SnpToken t : enumerate_alphabet()) {
        char32_t c = encode_char(t);
        char hexbuf[8];
        std::snprintf(hexbuf, sizeof(hexbuf), "%04X", static_cast<unsigned>(c));
        std::string ch;
        utf8_append(ch, c);
        os << snp_token_name(t) << '\t' << hexbuf << '\t' << ch << '\n';
    }
}

}  // namespace snp2vec
