#include "snp2vec/genome.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace snp2vec {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

bool parse_u64(std::string_view s, uint64_t& out) {
    auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

bool parse_f64(const std::string& s, double& out) {
    try {
        size_t used = 0;
        out = std::stod(s, &used);
        return used == s.size();
    } catch (...) {
        return false;
    }
}

bool uppercase_bases(std::string& seq) {
    for (char& c : seq) {
        char u = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        if (u != 'A' && u != 'C' && u != 'G' && u != 'T' && u != 'N') return false;
        c = u;
    }
    return true;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    return in;
}

}  // namespace

// ---------------------------------------------------------------------------
// FASTA
// ---------------------------------------------------------------------------

std::vector<ReferenceContig> parse_fasta(std::istream& in) {
    std::vector<ReferenceContig> contigs;
    std::string line;
    size_t line_no = 0;
    bool have_contig = false;

    auto finish = [&](size_t at_line) {
        if (have_contig && contigs.back().sequence.empty())
            throw ParseError("FASTA: contig '" + contigs.back().name + "' has an empty sequence (line " +
                             std::to_string(at_line) + ")");
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '>') {
            finish(line_no);
            std::string name = line.substr(1);
            size_t ws = name.find_first_of(" \t");
            if (ws != std::string::npos) name.resize(ws);
            if (name.empty()) throw ParseError("FASTA: malformed header at line " + std::to_string(line_no));
            contigs.push_back(ReferenceContig{std::move(name), {}});
            have_contig = true;
        } else {
            if (!have_contig) throw ParseError("FASTA: sequence before any header at line " + std::to_string(line_no));
            std::string chunk = line;
            if (!uppercase_bases(chunk))
                throw ParseError("FASTA: illegal character at line " + std::to_string(line_no));
            contigs.back().sequence += chunk;
        }
    }
    finish(line_no);
    if (contigs.empty()) throw ParseError("FASTA: no contigs found");
    return contigs;
}

std::vector<ReferenceContig> load_fasta(const std::string& path) {
    auto in = open_input(path);
    return parse_fasta(in);
}

// ---------------------------------------------------------------------------
// Variant records
// ---------------------------------------------------------------------------

std::string_view variant_class_name(VariantClass c) {
    switch (c) {
        case VariantClass::Substitution: return "substitution";
        case VariantClass::MultiBaseSubstitution: return "multi_base_substitution";
        case VariantClass::Insertion: return "insertion";
        case VariantClass::Deletion: return "deletion";
        case VariantClass::Unsupported: return "unsupported";
    }
    return "unsupported";
}

VariantClass classify_variant(std::string_view ref_seq, std::string_view alt_seq) {
    if (ref_seq.empty() || alt_seq.empty())
        throw BoundsError("classify_variant: empty allele string");
    if (ref_seq.size() > kMaxVariantLength || alt_seq.size() > kMaxVariantLength)
        throw BoundsError("classify_variant: allele longer than 50 bp");
    if (ref_seq.size() == 1 && alt_seq.size() == 1) return VariantClass::Substitution;
    if (ref_seq.size() == alt_seq.size()) return VariantClass::MultiBaseSubstitution;
    if (ref_seq.size() == 1 && alt_seq.size() > 1 && alt_seq.substr(0, 1) == ref_seq)
        return VariantClass::Insertion;
    if (alt_seq.size() == 1 && ref_seq.size() > 1 && ref_seq.substr(0, 1) == alt_seq)
        return VariantClass::Deletion;
    return VariantClass::Unsupported;
}

VariantParseResult parse_variant_records(std::istream& in, const VariantParseOptions& opts) {
    VariantParseResult result;
    std::string line;
    size_t line_no = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;

        auto reject = [&](const std::string& reason) {
            result.rejected.push_back(RejectedRecord{line_no, reason});
        };

        auto cols = split(line, '\t');
        if (cols.size() < 8) {
            reject("expected 8 tab-separated columns, got " + std::to_string(cols.size()));
            continue;
        }

        VariantRecord rec;
        rec.contig = cols[0];
        if (!parse_u64(cols[1], rec.position) || rec.position == 0) {
            reject("unparsable position '" + cols[1] + "'");
            continue;
        }
        rec.id = cols[2];
        rec.ref_seq = cols[3];
        if (!uppercase_bases(rec.ref_seq) || rec.ref_seq.empty()) {
            reject("REF is not a base string");
            continue;
        }
        if (cols[4].empty() || cols[4] == ".") {
            reject("no alternative alleles");
            continue;
        }
        bool alts_ok = true;
        for (auto& alt : split(cols[4], ',')) {
            if (!uppercase_bases(alt) || alt.empty()) {
                alts_ok = false;
                break;
            }
            rec.alt_seqs.push_back(std::move(alt));
        }
        if (!alts_ok) {
            reject("ALT is not a base string");
            continue;
        }
        uint64_t longest = rec.ref_seq.size();
        for (const auto& alt : rec.alt_seqs) longest = std::max<uint64_t>(longest, alt.size());
        if (longest > kMaxVariantLength) {
            reject("variation longer than 50 bp");
            continue;
        }

        // INFO: flags and key=value entries separated by ';'
        std::optional<std::vector<double>> freqs;
        bool freq_malformed = false;
        for (const auto& entry : split(cols[7], ';')) {
            if (entry == "COMMON") {
                rec.common = true;
            } else if (entry.size() > opts.freq_key.size() + 1 &&
                       entry.compare(0, opts.freq_key.size(), opts.freq_key) == 0 &&
                       entry[opts.freq_key.size()] == '=') {
                std::vector<double> vals;
                for (const auto& tok : split(entry.substr(opts.freq_key.size() + 1), ',')) {
                    double v = 0.0;
                    if (!parse_f64(tok, v)) {
                        freq_malformed = true;
                        break;
                    }
                    vals.push_back(v);
                }
                if (!freq_malformed) freqs = std::move(vals);
            }
        }
        if (freq_malformed) {
            reject("malformed " + opts.freq_key + " entry");
            continue;
        }

        size_t n_alleles = 1 + rec.alt_seqs.size();
        if (freqs) {
            if (freqs->size() != n_alleles) {
                reject("frequency count " + std::to_string(freqs->size()) + " does not match allele count " +
                       std::to_string(n_alleles));
                continue;
            }
            bool in_range = true;
            double sum = 0.0;
            for (double v : *freqs) {
                if (v < 0.0 || v > 1.0) in_range = false;
                sum += v;
            }
            if (!in_range || sum > 1.0 + 1e-6) {
                reject("frequencies outside [0,1] or summing above 1");
                continue;
            }
            rec.probs = std::move(*freqs);
        } else {
            // fallback for records without frequency data
            double eps = opts.missing_freq_epsilon;
            rec.probs.assign(n_alleles, eps / static_cast<double>(rec.alt_seqs.size()));
            rec.probs[0] = 1.0 - eps;
        }

        if (opts.common_only && !rec.common) continue;
        result.records.push_back(std::move(rec));
    }
    return result;
}

VariantParseResult load_variant_records(const std::string& path, const VariantParseOptions& opts) {
    auto in = open_input(path);
    return parse_variant_records(in, opts);
}

// ---------------------------------------------------------------------------
// Chromosome matrix
// ---------------------------------------------------------------------------

double AlleleDistribution::sum() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

AlleleDistribution AlleleDistribution::delta(Allele a) {
    AlleleDistribution d;
    d[a] = 1.0;
    return d;
}

AlleleDistribution ChromosomeMatrix::column_distribution(uint64_t position) const {
    if (position < 1 || position > length())
        throw BoundsError("column position " + std::to_string(position) + " outside [1, " +
                          std::to_string(length()) + "]");
    auto it = columns_.find(position);
    if (it != columns_.end()) return it->second;
    return AlleleDistribution::delta(reference_.allele_at(position));
}

void ChromosomeMatrix::set_column(uint64_t position, AlleleDistribution dist) {
    if (position < 1 || position > length())
        throw BoundsError("column position " + std::to_string(position) + " outside [1, " +
                          std::to_string(length()) + "]");
    double s = 0.0;
    for (double w : dist.weights) {
        if (w < 0.0) throw DataError("negative probability in matrix column");
        s += w;
    }
    if (std::abs(s - 1.0) > 1e-9) throw DataError("matrix column does not sum to 1");
    columns_[position] = dist;
}

ChromosomeMatrix build_chromosome_matrix(const ReferenceContig& contig,
                                         const std::vector<VariantRecord>& variants,
                                         MatrixBuildReport* report) {
    MatrixBuildReport local;
    MatrixBuildReport& rep = report ? *report : local;
    rep = MatrixBuildReport{};

    const uint64_t n = contig.length();
    // alt-token mass per touched position; reference residual is added at the end
    std::map<uint64_t, std::array<double, kAlleleCount>> alt_mass;

    auto add_mass = [&](uint64_t pos, Allele a, double p) {
        alt_mass[pos][static_cast<size_t>(a)] += p;
    };

    for (const auto& rec : variants) {
        if (rec.contig != contig.name)
            throw DataError("variant contig '" + rec.contig + "' does not match matrix contig '" + contig.name + "'");
        uint64_t span = rec.ref_seq.size();
        if (rec.position < 1 || rec.position + span - 1 > n) {
            ++rep.skipped_out_of_bounds;
            continue;
        }
        bool touches_n = false;
        for (uint64_t i = 0; i < span; ++i) {
            if (contig.base_at(rec.position + i) == 'N') touches_n = true;
        }
        if (touches_n) {
            // N marks unmapped reference; keep the implicit delta-on-N column
            ++rep.skipped_n_reference;
            continue;
        }

        size_t placed = 0;
        for (size_t ai = 0; ai < rec.alt_seqs.size(); ++ai) {
            const std::string& alt = rec.alt_seqs[ai];
            double p = rec.probs[1 + ai];
            switch (classify_variant(rec.ref_seq, alt)) {
                case VariantClass::Substitution:
                    add_mass(rec.position, *allele_from_base(alt[0]), p);
                    ++placed;
                    break;
                case VariantClass::MultiBaseSubstitution:
                    for (size_t k = 0; k < alt.size(); ++k) {
                        if (rec.ref_seq[k] != alt[k]) add_mass(rec.position + k, *allele_from_base(alt[k]), p);
                    }
                    ++placed;
                    break;
                case VariantClass::Insertion:
                    add_mass(rec.position, insertion_after(*allele_from_base(rec.ref_seq[0])), p);
                    ++placed;
                    break;
                case VariantClass::Deletion:
                    // anchor base stays untouched; deleted tail positions carry DEL mass
                    for (uint64_t i = 1; i < span; ++i) add_mass(rec.position + i, Allele::DEL, p);
                    ++placed;
                    break;
                case VariantClass::Unsupported:
                    ++rep.skipped_unsupported;
                    break;
            }
        }
        if (placed > 0) ++rep.applied;
    }

    ChromosomeMatrix matrix(contig);
    for (auto& [pos, mass] : alt_mass) {
        double total_alt = 0.0;
        for (double w : mass) total_alt += w;
        AlleleDistribution dist;
        dist.weights = mass;
        dist[contig.allele_at(pos)] += std::max(0.0, 1.0 - total_alt);
        double total = dist.sum();
        if (total_alt > 1.0 + 1e-12) ++rep.renormalized_columns;
        for (double& w : dist.weights) w /= total;
        matrix.set_column(pos, dist);
    }
    return matrix;
}

// ---------------------------------------------------------------------------
// SNPM persistence
// v1 layout: "SNPM", version u32, contig name, N u64, column count u64,
// columns as (pos u64 + 11 f64), then the backing reference sequence
// (u64 length + bytes) so a matrix file is self-contained for sampling.
// ---------------------------------------------------------------------------

namespace {
constexpr char kMatrixMagic[4] = {'S', 'N', 'P', 'M'};
constexpr uint32_t kMatrixVersion = 1;
}  // namespace

void ChromosomeMatrix::save(std::ostream& os) const {
    os.write(kMatrixMagic, 4);
    bin::write_le<uint32_t>(os, kMatrixVersion);
    bin::write_string(os, reference_.name);
    bin::write_le<uint64_t>(os, length());
    bin::write_le<uint64_t>(os, columns_.size());
    for (const auto& [pos, dist] : columns_) {
        bin::write_le<uint64_t>(os, pos);
        for (double w : dist.weights) bin::write_le<double>(os, w);
    }
    bin::write_le<uint64_t>(os, reference_.sequence.size());
    os.write(reference_.sequence.data(), static_cast<std::streamsize>(reference_.sequence.size()));
    if (!os) throw IoError("failed writing chromosome matrix");
}

void ChromosomeMatrix::save_file(const std::string& path) const {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open " + path + " for writing");
    save(os);
}

ChromosomeMatrix ChromosomeMatrix::load(std::istream& is) {
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMatrixMagic, 4) != 0) throw ParseError("not a SNPM matrix file");
    uint32_t version = bin::read_le<uint32_t>(is);
    if (version != kMatrixVersion) throw ParseError("unsupported SNPM version " + std::to_string(version));
    std::string name = bin::read_string(is);
    uint64_t n = bin::read_le<uint64_t>(is);
    uint64_t ncols = bin::read_le<uint64_t>(is);
    std::map<uint64_t, AlleleDistribution> cols;
    for (uint64_t i = 0; i < ncols; ++i) {
        uint64_t pos = bin::read_le<uint64_t>(is);
        AlleleDistribution d;
        for (double& w : d.weights) w = bin::read_le<double>(is);
        cols.emplace(pos, d);
    }
    uint64_t seq_len = bin::read_le<uint64_t>(is);
    std::string seq(seq_len, '\0');
    is.read(seq.data(), static_cast<std::streamsize>(seq_len));
    if (!is) throw IoError("truncated SNPM file");
    if (seq_len != n) throw ParseError("SNPM reference length disagrees with N");

    ChromosomeMatrix m(ReferenceContig{std::move(name), std::move(seq)});
    m.columns_ = std::move(cols);
    return m;
}

ChromosomeMatrix ChromosomeMatrix::load_file(const std::string& path) {
    auto is = open_input(path);
    return load(is);
}

}  // namespace snp2vec
