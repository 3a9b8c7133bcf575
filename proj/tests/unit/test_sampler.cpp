#include <cmath>
#include <map>
#include <sstream>

#include "doctest.h"
#include "snp2vec/sampler.hpp"

using namespace snp2vec;

namespace {

ChromosomeMatrix plain_matrix(const std::string& seq) {
    return build_chromosome_matrix(ReferenceContig{"c", seq}, {});
}

AlleleDistribution dist_of(std::initializer_list<std::pair<Allele, double>> entries) {
    AlleleDistribution d;
    for (auto [a, w] : entries) d[a] = w;
    return d;
}

std::string wild_type_text(const std::string& bases) {
    std::string out;
    for (char c : bases) {
        Allele a = *allele_from_base(c);
        utf8_append(out, encode_char(make_snp_token(a, a)));
    }
    return out;
}

}  // namespace

TEST_CASE("sample_alleles") {
    SUBCASE("degenerate distribution always returns the same pair") {
        Rng rng(1);
        auto d = dist_of({{Allele::C, 1.0}});
        for (int i = 0; i < 100; ++i) {
            auto [a, b] = sample_alleles(d, rng);
            CHECK(a == Allele::C);
            CHECK(b == Allele::C);
        }
    }
    SUBCASE("independent draws give 2pq heterozygous pairs") {
        Rng rng(2);
        auto d = dist_of({{Allele::A, 0.5}, {Allele::G, 0.5}});
        const int n = 1'000'000;
        int het = 0;
        for (int i = 0; i < n; ++i) {
            auto [a, b] = sample_alleles(d, rng);
            if (a != b) ++het;
        }
        // closed form: 2 * 0.5 * 0.5 = 0.5
        CHECK(std::abs(static_cast<double>(het) / n - 0.5) < 0.01);
    }
    SUBCASE("fixed seed reproduces the pair sequence") {
        auto d = dist_of({{Allele::A, 0.3}, {Allele::C, 0.7}});
        Rng r1(99), r2(99);
        for (int i = 0; i < 1000; ++i) {
            CHECK(sample_alleles(d, r1) == sample_alleles(d, r2));
        }
    }
    SUBCASE("marginals match the column distribution (chi-square)") {
        Rng rng(5);
        auto d = dist_of({{Allele::A, 0.7}, {Allele::G, 0.2}, {Allele::T, 0.1}});
        const int n = 100'000;
        std::map<Allele, int> counts;
        for (int i = 0; i < n; ++i) {
            auto [a, b] = sample_alleles(d, rng);
            ++counts[a];
            ++counts[b];
        }
        double chi2 = 0.0;
        for (auto [a, w] : std::map<Allele, double>{{Allele::A, 0.7}, {Allele::G, 0.2}, {Allele::T, 0.1}}) {
            double expect = 2.0 * n * w;
            double diff = counts[a] - expect;
            chi2 += diff * diff / expect;
        }
        // df = 2, p = 0.001 critical value
        CHECK(chi2 < 13.816);
    }
}

TEST_CASE("sample_segments follows the walk construction") {
    SUBCASE("fixed-length tiling drops the short tail") {
        auto m = plain_matrix("ACGTACGTACGTACGTACGTACGTA");  // N = 25
        SamplerParams p{.walks = 1, .start_limit = 0, .min_len = 10, .max_len = 10, .seed = 3};
        auto segs = sample_segments(m, p);
        REQUIRE(segs.size() == 2);
        CHECK(segs[0].start == 1);
        CHECK(segs[0].length == 10);
        CHECK(segs[1].start == 11);
        CHECK(segs[1].length == 10);
    }
    SUBCASE("segments from a variant-free matrix are wild-type text") {
        auto m = plain_matrix("ACGTACGTAC");
        SamplerParams p{.walks = 1, .start_limit = 0, .min_len = 5, .max_len = 5, .seed = 1};
        auto segs = sample_segments(m, p);
        REQUIRE(segs.size() == 2);
        CHECK(segs[0].text == wild_type_text("ACGTA"));
        CHECK(segs[1].text == wild_type_text("CGTAC"));
    }
    SUBCASE("single-walk segments tile without gaps or overlap") {
        auto m = plain_matrix(std::string(500, 'A'));
        SamplerParams p{.walks = 1, .start_limit = 100, .min_len = 17, .max_len = 63, .seed = 7};
        auto segs = sample_segments(m, p);
        REQUIRE(!segs.empty());
        for (size_t i = 0; i + 1 < segs.size(); ++i) {
            CHECK(segs[i + 1].start == segs[i].start + segs[i].length);
        }
        for (const auto& s : segs) {
            CHECK(s.length >= p.min_len);
            CHECK(s.length <= p.max_len);
        }
    }
    SUBCASE("identical seeds give identical corpora, byte for byte") {
        ReferenceContig contig{"c", "ACGTACGTACGTACGTACGTACGTACGTACGT"};
        auto m = build_chromosome_matrix(
            contig, {[&] {
                VariantRecord r;
                r.contig = "c";
                r.position = 5;
                r.ref_seq = "A";
                r.alt_seqs = {"G"};
                r.probs = {0.5, 0.5};
                return r;
            }()});
        SamplerParams p{.walks = 3, .start_limit = 8, .min_len = 4, .max_len = 9, .seed = 42};
        auto s1 = sample_segments(m, p);
        auto s2 = sample_segments(m, p);
        std::ostringstream c1, c2;
        write_corpus(c1, s1, m.contig(), p.seed);
        write_corpus(c2, s2, m.contig(), p.seed);
        CHECK(c1.str() == c2.str());
    }
    SUBCASE("haploid mode emits raw reference slices") {
        auto m = plain_matrix("ACGTACGTAC");
        SamplerParams p{.walks = 1, .start_limit = 0, .min_len = 5, .max_len = 5, .seed = 1};
        auto segs = sample_segments(m, p, CorpusMode::HaploidReference);
        REQUIRE(segs.size() == 2);
        CHECK(segs[0].text == "ACGTA");
        CHECK(segs[1].text == "CGTAC");
    }
    SUBCASE("K >= N is a parameter error") {
        auto m = plain_matrix("ACGT");
        SamplerParams p{.walks = 1, .start_limit = 4, .min_len = 1, .max_len = 2, .seed = 0};
        CHECK_THROWS_AS(sample_segments(m, p), ConfigError);
    }
}

TEST_CASE("corpus file round-trip") {
    std::vector<Segment> segs = {{"ACGT", "c", 1, 4}, {"TTTT", "c", 5, 4}};
    std::ostringstream os;
    write_corpus(os, segs, "c", 9);
    CHECK(os.str() == "#contig=c seed=9\nACGT\nTTTT\n");
    std::istringstream is(os.str());
    auto lines = read_corpus(is);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "ACGT");
    CHECK(lines[1] == "TTTT");
}

TEST_CASE("encode_sample_region") {
    ReferenceContig ref{"c", "ACGTACGTAC"};

    auto genotype = [&](uint64_t pos, const std::string& r, std::vector<std::string> alts, uint32_t g1, uint32_t g2) {
        SampleGenotype g;
        g.contig = "c";
        g.region_start = 1;
        g.region_end = ref.length();
        GenotypeCall call;
        call.ref_seq = r;
        call.alt_seqs = std::move(alts);
        call.allele1 = g1;
        call.allele2 = g2;
        g.calls.emplace(pos, call);
        return g;
    };

    SUBCASE("no calls produce the wild-type encoding of the region") {
        SampleGenotype g;
        g.contig = "c";
        g.region_start = 1;
        g.region_end = 3;
        CHECK(encode_sample_region(ref, g) == wild_type_text("ACG"));
        // equivalence with haploid_region mapped through homozygous tokens
        CHECK(encode_sample_region(ref, g) == wild_type_text(haploid_region(ref, 1, 3)));
    }
    SUBCASE("heterozygous substitution emits the base pair token") {
        auto g = genotype(1, "A", {"G"}, 0, 1);
        auto tokens = decode_tokens(encode_sample_region(ref, g));
        CHECK(snp_token_name(tokens[0]) == "A/G");
        CHECK(snp_token_name(tokens[1]) == "C/C");
    }
    SUBCASE("homozygous deletion emits anchor then DEL/DEL") {
        auto g = genotype(1, "AC", {"A"}, 1, 1);
        auto tokens = decode_tokens(encode_sample_region(ref, g));
        CHECK(snp_token_name(tokens[0]) == "A/A");
        CHECK(snp_token_name(tokens[1]) == "DEL/DEL");
        CHECK(tokens.size() == 10);  // output length equals region length
    }
    SUBCASE("heterozygous deletion pairs DEL with the reference track") {
        // brute-force per-allele expansion: allele 0 -> A,C ; allele 1 -> A,DEL
        auto g = genotype(1, "AC", {"A"}, 0, 1);
        auto tokens = decode_tokens(encode_sample_region(ref, g));
        CHECK(snp_token_name(tokens[0]) == "A/A");
        CHECK(snp_token_name(tokens[1]) == "C/DEL");
    }
    SUBCASE("insertion emits the XI token for the carrying allele") {
        auto g = genotype(2, "C", {"CTT"}, 0, 1);
        auto tokens = decode_tokens(encode_sample_region(ref, g));
        CHECK(snp_token_name(tokens[1]) == "C/CI");
    }
    SUBCASE("multi-base substitution expands per position") {
        auto g = genotype(1, "AC", {"GT"}, 1, 1);
        auto tokens = decode_tokens(encode_sample_region(ref, g));
        CHECK(snp_token_name(tokens[0]) == "G/G");
        CHECK(snp_token_name(tokens[1]) == "T/T");
    }
    SUBCASE("unsupported call shapes raise an encoding error naming the position") {
        auto g = genotype(3, "GT", {"C"}, 0, 1);
        CHECK_THROWS_WITH_AS(encode_sample_region(ref, g), doctest::Contains("position 3"), DataError);
    }
    SUBCASE("output length always equals region length") {
        auto g = genotype(4, "TACG", {"T"}, 1, 1);  // 3-base deletion inside the region
        g.region_start = 2;
        g.region_end = 9;
        auto tokens = decode_tokens(encode_sample_region(ref, g));
        CHECK(tokens.size() == 8);
    }
}

TEST_CASE("haploid collapse chooses one allele per call") {
    ReferenceContig ref{"c", "AAAAAAAAAA"};
    SampleGenotype g;
    g.contig = "c";
    g.region_start = 1;
    g.region_end = 10;
    GenotypeCall call;
    call.ref_seq = "A";
    call.alt_seqs = {"G"};
    call.allele1 = 0;
    call.allele2 = 1;
    g.calls.emplace(5, call);

    Rng rng(17);
    int saw_alt = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        std::string text = encode_sample_region_haploid(ref, g, rng);
        REQUIRE(text.size() == 10);  // all-ASCII haploid letters
        CHECK(text.substr(0, 4) == "AAAA");
        if (text[4] == 'G') ++saw_alt;
        else CHECK(text[4] == 'A');
    }
    CHECK(std::abs(static_cast<double>(saw_alt) / n - 0.5) < 0.02);
}

TEST_CASE("haploid_region slices 1-based inclusive bounds") {
    ReferenceContig ref{"c", "ACGTN"};
    CHECK(haploid_region(ref, 2, 4) == "CGT");
    CHECK(haploid_region(ref, 1, 5) == "ACGTN");
    CHECK_THROWS_AS(haploid_region(ref, 4, 2), BoundsError);
    CHECK_THROWS_AS(haploid_region(ref, 0, 3), BoundsError);
    CHECK_THROWS_AS(haploid_region(ref, 1, 6), BoundsError);
}

TEST_CASE("single-sample genotype VCF parsing") {
    SUBCASE("GT field with / and | is the same unordered pair") {
        std::istringstream in(
            "##fileformat=VCFv4.2\n"
            "#CHROM\tPOS\tID\tREF\tALT\tQUAL\tFILTER\tINFO\tFORMAT\tS1\n"
            "c\t3\t.\tG\tT\t.\t.\t.\tGT:DP\t0/1:30\n"
            "c\t7\t.\tG\tC\t.\t.\t.\tGT\t1|0\n");
        auto g = parse_sample_genotype(in);
        CHECK(g.contig == "c");
        REQUIRE(g.calls.size() == 2);
        CHECK(g.calls.at(3).allele1 == 0);
        CHECK(g.calls.at(3).allele2 == 1);
        CHECK(g.calls.at(7).allele1 == 1);
        CHECK(g.calls.at(7).allele2 == 0);
    }
    SUBCASE("uncalled and homozygous-reference sites are dropped") {
        std::istringstream in(
            "c\t3\t.\tG\tT\t.\t.\t.\tGT\t./.\n"
            "c\t5\t.\tG\tT\t.\t.\t.\tGT\t0/0\n");
        auto g = parse_sample_genotype(in);
        CHECK(g.calls.empty());
    }
    SUBCASE("allele index beyond the ALT list is rejected") {
        std::istringstream in("c\t3\t.\tG\tT\t.\t.\t.\tGT\t0/2\n");
        CHECK_THROWS_AS(parse_sample_genotype(in), ParseError);
    }
    SUBCASE("multiple sample columns are rejected") {
        std::istringstream in("c\t3\t.\tG\tT\t.\t.\t.\tGT\t0/1\t0/1\n");
        CHECK_THROWS_AS(parse_sample_genotype(in), ParseError);
    }
}
