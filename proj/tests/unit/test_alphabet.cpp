#include <algorithm>
#include <set>
#include <sstream>

#include "doctest.h"
#include "snp2vec/alphabet.hpp"

using namespace snp2vec;

TEST_CASE("allele order is lexicographic on symbol names") {
    for (size_t i = 0; i + 1 < kAlleleCount; ++i) {
        CHECK(kAlleleNames[i] < kAlleleNames[i + 1]);
    }
    CHECK(allele_from_name("DEL") == Allele::DEL);
    CHECK(allele_from_name("bogus") == std::nullopt);
}

TEST_CASE("alphabet holds exactly 66 distinct canonical tokens") {
    const auto& alphabet = enumerate_alphabet();
    REQUIRE(alphabet.size() == kSnpTokenCount);

    std::set<SnpToken> distinct(alphabet.begin(), alphabet.end());
    CHECK(distinct.size() == kSnpTokenCount);

    CHECK(snp_token_name(alphabet.front()) == "A/A");
    CHECK(snp_token_name(alphabet.back()) == "TI/TI");
    CHECK(std::is_sorted(alphabet.begin(), alphabet.end()));

    for (size_t i = 0; i < alphabet.size(); ++i) {
        CHECK(alphabet[i].first <= alphabet[i].second);
        CHECK(snp_token_index(alphabet[i]) == i);
    }
}

TEST_CASE("make_snp_token canonicalizes and commutes") {
    CHECK(snp_token_name(make_snp_token(Allele::C, Allele::A)) == "A/C");
    CHECK(snp_token_name(make_snp_token(Allele::T, Allele::T)) == "T/T");
    CHECK(snp_token_name(make_snp_token(Allele::DEL, Allele::AI)) == "AI/DEL");

    for (size_t i = 0; i < kAlleleCount; ++i) {
        for (size_t j = 0; j < kAlleleCount; ++j) {
            auto a = static_cast<Allele>(i);
            auto b = static_cast<Allele>(j);
            CHECK(make_snp_token(a, b) == make_snp_token(b, a));
        }
    }
}

TEST_CASE("codec maps homozygous tokens to the published letters") {
    auto chr = [](const char* n1, const char* n2) {
        return encode_char(make_snp_token(*allele_from_name(n1), *allele_from_name(n2)));
    };
    CHECK(chr("A", "A") == U'A');
    CHECK(chr("C", "C") == U'C');
    CHECK(chr("G", "G") == U'G');
    CHECK(chr("N", "N") == U'N');
    CHECK(chr("T", "T") == U'T');
    CHECK(chr("AI", "AI") == U'B');
    CHECK(chr("CI", "CI") == U'D');
    CHECK(chr("GI", "GI") == U'H');
    CHECK(chr("NI", "NI") == U'O');
    CHECK(chr("TI", "TI") == U'U');
    CHECK(chr("DEL", "DEL") == U'X');
}

TEST_CASE("heterozygous code points are consecutive from U+0100") {
    char32_t expected = U'Ā';
    for (SnpToken t : enumerate_alphabet()) {
        if (t.first == t.second) continue;
        CHECK(encode_char(t) == expected);
        ++expected;
    }
    CHECK(expected == U'Ā' + 55);
}

TEST_CASE("codec is a bijection over all 66 tokens") {
    std::set<char32_t> seen;
    for (SnpToken t : enumerate_alphabet()) {
        char32_t c = encode_char(t);
        CHECK(seen.insert(c).second);
        CHECK(decode_char(c) == t);
        CHECK(is_alphabet_char(c));
    }
    CHECK_THROWS_AS(decode_char(U'z'), ParseError);
    CHECK_FALSE(is_alphabet_char(U'一'));
}

TEST_CASE("token text round-trips through UTF-8") {
    Rng rng(7);
    const auto& alphabet = enumerate_alphabet();
    std::vector<SnpToken> tokens;
    for (int i = 0; i < 500; ++i) tokens.push_back(alphabet[rng.uniform_int(0, alphabet.size() - 1)]);
    std::string text = encode_tokens(tokens);
    CHECK(decode_tokens(text) == tokens);
}

TEST_CASE("zygosity partitions the alphabet as 1 + 10 + 55") {
    for (size_t r = 0; r < kAlleleCount; ++r) {
        auto ref = static_cast<Allele>(r);
        int wild = 0, hom = 0, het = 0;
        for (SnpToken t : enumerate_alphabet()) {
            switch (classify_zygosity(t, ref)) {
                case Zygosity::WildType: ++wild; break;
                case Zygosity::Homozygous: ++hom; break;
                case Zygosity::Heterozygous: ++het; break;
            }
        }
        CHECK(wild == 1);
        CHECK(hom == 10);
        CHECK(het == 55);
    }
}

TEST_CASE("codec table lists every token in canonical order") {
    std::ostringstream os;
    write_codec_table(os);
    std::istringstream is(os.str());
    std::string line;
    size_t count = 0;
    while (std::getline(is, line)) {
        CAPTURE(line);
        size_t tab1 = line.find('\t');
        size_t tab2 = line.find('\t', tab1 + 1);
        REQUIRE(tab1 != std::string::npos);
        REQUIRE(tab2 != std::string::npos);
        ++count;
    }
    CHECK(count == kSnpTokenCount);
    CHECK(os.str().substr(0, 9) == "A/A\t0041\t");
}

TEST_CASE("haploid letters match the homozygous codec letters") {
    for (size_t i = 0; i < kAlleleCount; ++i) {
        auto a = static_cast<Allele>(i);
        CHECK(haploid_char(a) == encode_char(make_snp_token(a, a)));
    }
}
