#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "snp2vec/genome.hpp"

namespace snp2vec {

// ---------------------------------------------------------------------------
// Self-supervised corpus sampling
// ---------------------------------------------------------------------------

struct SamplerParams {
    uint64_t walks = 1;        // T: number of start-position draws
    uint64_t start_limit = 0;  // K: start positions are drawn from [0, K] (0-based)
    uint64_t min_len = 1;      // L_inf
    uint64_t max_len = 1;      // L_sup
    uint64_t seed = 0;

    void validate(uint64_t contig_length) const;
};

struct Segment {
    std::string text;  // UTF-8 SNP chars (diploid) or base letters (haploid)
    std::string contig;
    uint64_t start = 0;  // 1-based
    uint64_t length = 0;
};

enum class CorpusMode : uint8_t {
    Diploid,           // two weighted draws per position -> SNP token chars
    HaploidReference,  // reference bases only, for the haploid baseline
};

// Two independent weighted draws from a column distribution.
std::pair<Allele, Allele> sample_alleles(const AlleleDistribution& dist, Rng& rng);

// Algorithm: for each of T walks, draw a start in [0, K], then tile the
// chromosome with segments of random length in [L_inf, L_sup] until the end;
// a truncated tail shorter than L_inf is dropped. Each walk owns an RNG
// stream derived from (seed, walk index), so output never depends on
// scheduling and is byte-stable for a fixed seed.
std::vector<Segment> sample_segments(const ChromosomeMatrix& matrix, const SamplerParams& params,
                                     CorpusMode mode = CorpusMode::Diploid);

// Corpus file: one segment per line with a '#contig=<name> seed=<seed>' header.
void write_corpus(std::ostream& os, const std::vector<Segment>& segments, const std::string& contig, uint64_t seed);
std::vector<std::string> read_corpus(std::istream& is);
std::vector<std::string> load_corpus(const std::string& path);

// ---------------------------------------------------------------------------
// Per-sample genotype encoding (fine-tuning inputs)
// ---------------------------------------------------------------------------

struct GenotypeCall {
    std::string ref_seq;
    std::vector<std::string> alt_seqs;
    uint32_t allele1 = 0;  // 0 = REF, i = alt_seqs[i-1]
    uint32_t allele2 = 0;
};

struct SampleGenotype {
    std::string contig;
    std::map<uint64_t, GenotypeCall> calls;  // keyed by 1-based position
    uint64_t region_start = 0;
    uint64_t region_end = 0;  // inclusive
};

// Single-sample VCF subset: CHROM POS ID REF ALT QUAL FILTER INFO FORMAT SAMPLE
// with GT using '/' or '|' (both mean the same unordered pair here).
SampleGenotype parse_sample_genotype(std::istream& in);
SampleGenotype load_sample_genotype(const std::string& path);

// Diploid encoding: wild-type tokens where no call applies, per-allele
// expansion of substitution/insertion/deletion calls elsewhere. Output length
// equals the region length; UTF-8 SNP chars.
std::string encode_sample_region(const ReferenceContig& reference, const SampleGenotype& genotype);

// Haploid collapse of the same region: one allele chosen uniformly per call,
// rendered with the haploid letters (A C G T N B D H O U X).
std::string encode_sample_region_haploid(const ReferenceContig& reference, const SampleGenotype& genotype, Rng& rng);

// Raw reference slice [start, end], 1-based inclusive.
std::string haploid_region(const ReferenceContig& reference, uint64_t start, uint64_t end);

}  // namespace snp2vec
