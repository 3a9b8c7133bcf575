#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "snp2vec/common.hpp"

namespace snp2vec {

// ---------------------------------------------------------------------------
// Haploid allele alphabet: the 4 bases, the unknown base, one aggregated
// insertion token per base ("XI" = any insertion after X) and a deletion
// token. Enum values follow the canonical lexicographic order of the symbol
// names, so integer comparison == canonical comparison.
// ---------------------------------------------------------------------------

enum class Allele : uint8_t {
    A = 0,
    AI,
    C,
    CI,
    DEL,
    G,
    GI,
    N,
    NI,
    T,
    TI,
};

inline constexpr size_t kAlleleCount = 11;

inline constexpr std::array<std::string_view, kAlleleCount> kAlleleNames = {
    "A", "AI", "C", "CI", "DEL", "G", "GI", "N", "NI", "T", "TI",
};

std::string_view allele_name(Allele a);
std::optional<Allele> allele_from_name(std::string_view name);

// Base allele for a single nucleotide character (A/C/G/T/N, case-folded).
std::optional<Allele> allele_from_base(char base);

// The insertion token anchored at a base allele (A -> AI etc).
Allele insertion_after(Allele base);

inline bool is_insertion(Allele a) {
    return a == Allele::AI || a == Allele::CI || a == Allele::GI || a == Allele::NI || a == Allele::TI;
}

// ---------------------------------------------------------------------------
// Diploid SNP token: an unordered pair of alleles stored canonically
// (first <= second). 66 distinct tokens in total.
// ---------------------------------------------------------------------------

struct SnpToken {
    Allele first;
    Allele second;

    bool operator==(const SnpToken&) const = default;
    auto operator<=>(const SnpToken&) const = default;
};

inline constexpr size_t kSnpTokenCount = 66;

SnpToken make_snp_token(Allele a, Allele b);

// "A/C" style display name.
std::string snp_token_name(SnpToken t);

// All 66 tokens in canonical lexicographic order of (first, second).
const std::vector<SnpToken>& enumerate_alphabet();

// Dense index of a token within enumerate_alphabet().
size_t snp_token_index(SnpToken t);

enum class Zygosity : uint8_t { WildType, Homozygous, Heterozygous };

// Classification relative to the reference allele at the token's position.
Zygosity classify_zygosity(SnpToken t, Allele reference);

// ---------------------------------------------------------------------------
// Single-character codec. Homozygous pairs use the published letters
// (A C G N T B D H O U X); the 55 heterozygous pairs take consecutive code
// points from U+0100 in canonical order. Any bijection carries the same
// information; this one is rule-generated and round-trip tested.
// ---------------------------------------------------------------------------

char32_t encode_char(SnpToken t);
SnpToken decode_char(char32_t c);
bool is_alphabet_char(char32_t c);

// Haploid single-character form: the code point of the homozygous pair
// (a, a). These stay within ASCII (A C G N T B D H O U X).
char32_t haploid_char(Allele a);

// Encode / decode whole token runs as UTF-8 text.
std::string encode_tokens(const std::vector<SnpToken>& tokens);
std::vector<SnpToken> decode_tokens(std::string_view utf8_text);

// One line per token, canonical order: "<first>/<second>\t<hex>\t<char>".
void write_codec_table(std::ostream& os);

}  // namespace snp2vec
