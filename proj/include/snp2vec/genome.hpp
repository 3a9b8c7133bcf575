#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "snp2vec/alphabet.hpp"
#include "snp2vec/common.hpp"

namespace snp2vec {

// ---------------------------------------------------------------------------
// Reference genome
// ---------------------------------------------------------------------------

struct ReferenceContig {
    std::string name;
    std::string sequence;  // uppercase A/C/G/T/N, 1-based addressing below

    uint64_t length() const { return sequence.size(); }

    char base_at(uint64_t pos) const {  // pos is 1-based
        if (pos < 1 || pos > length()) throw BoundsError("position " + std::to_string(pos) + " outside contig " + name);
        return sequence[pos - 1];
    }

    Allele allele_at(uint64_t pos) const { return *allele_from_base(base_at(pos)); }
};

// header lines start with '>', sequence lines hold A/C/G/T/N in either case
std::vector<ReferenceContig> parse_fasta(std::istream& in);
std::vector<ReferenceContig> load_fasta(const std::string& path);

// ---------------------------------------------------------------------------
// SNP database records (VCF-subset: CHROM POS ID REF ALT QUAL FILTER INFO)
// ---------------------------------------------------------------------------

inline constexpr uint64_t kMaxVariantLength = 50;

struct VariantRecord {
    std::string contig;
    uint64_t position = 0;  // 1-based
    std::string id;
    std::string ref_seq;
    std::vector<std::string> alt_seqs;
    std::vector<double> probs;  // aligned with [ref_seq, alt_seqs...]
    bool common = false;
};

enum class VariantClass : uint8_t {
    Substitution,
    MultiBaseSubstitution,
    Insertion,
    Deletion,
    Unsupported,
};

std::string_view variant_class_name(VariantClass c);

// Shape classification from (ref, alt); total over non-empty strings <= 50 bp.
VariantClass classify_variant(std::string_view ref_seq, std::string_view alt_seq);

struct RejectedRecord {
    size_t line = 0;
    std::string reason;
};

struct VariantParseResult {
    std::vector<VariantRecord> records;
    std::vector<RejectedRecord> rejected;
};

struct VariantParseOptions {
    bool common_only = false;
    std::string freq_key = "FREQ";   // INFO key holding [ref, alt...] frequencies
    double missing_freq_epsilon = 0.01;  // fallback alt mass when freq_key is absent
};

VariantParseResult parse_variant_records(std::istream& in, const VariantParseOptions& opts);
VariantParseResult load_variant_records(const std::string& path, const VariantParseOptions& opts);

// ---------------------------------------------------------------------------
// Chromosome matrix: sparse per-position distributions over the 11 alleles.
// Positions without an explicit column implicitly hold probability 1 on the
// reference base, so memory tracks the variant-touched positions only.
// ---------------------------------------------------------------------------

struct AlleleDistribution {
    std::array<double, kAlleleCount> weights{};

    double& operator[](Allele a) { return weights[static_cast<size_t>(a)]; }
    double operator[](Allele a) const { return weights[static_cast<size_t>(a)]; }

    double sum() const;
    static AlleleDistribution delta(Allele a);
};

struct MatrixBuildReport {
    uint64_t applied = 0;
    uint64_t skipped_unsupported = 0;
    uint64_t skipped_out_of_bounds = 0;
    uint64_t skipped_n_reference = 0;
    uint64_t renormalized_columns = 0;
};

class ChromosomeMatrix {
  public:
    ChromosomeMatrix() = default;
    explicit ChromosomeMatrix(ReferenceContig reference) : reference_(std::move(reference)) {}

    const std::string& contig() const { return reference_.name; }
    uint64_t length() const { return reference_.length(); }
    const ReferenceContig& reference() const { return reference_; }
    const std::map<uint64_t, AlleleDistribution>& columns() const { return columns_; }

    // explicit column if present, else delta mass on the reference base
    AlleleDistribution column_distribution(uint64_t position) const;

    void set_column(uint64_t position, AlleleDistribution dist);

    void save(std::ostream& os) const;
    void save_file(const std::string& path) const;
    static ChromosomeMatrix load(std::istream& is);
    static ChromosomeMatrix load_file(const std::string& path);

  private:
    ReferenceContig reference_;
    std::map<uint64_t, AlleleDistribution> columns_;
};

ChromosomeMatrix build_chromosome_matrix(const ReferenceContig& contig,
                                         const std::vector<VariantRecord>& variants,
                                         MatrixBuildReport* report = nullptr);

}  // namespace snp2vec
