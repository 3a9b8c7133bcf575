#include "snp2vec/sampler.hpp"

#include <algorithm>
#include <charconv>
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

// Per-allele token track across a call's reference span.
std::vector<Allele> allele_track(const GenotypeCall& call, uint32_t allele_idx, uint64_t position) {
    const size_t span = call.ref_seq.size();
    std::vector<Allele> track;
    track.reserve(span);

    auto base_allele = [&](char c) {
        auto a = allele_from_base(c);
        if (!a) throw DataError("non-base character in call at position " + std::to_string(position));
        return *a;
    };

    if (allele_idx == 0) {
        for (char c : call.ref_seq) track.push_back(base_allele(c));
        return track;
    }
    if (allele_idx > call.alt_seqs.size())
        throw DataError("allele index " + std::to_string(allele_idx) + " out of range at position " +
                        std::to_string(position));
    const std::string& alt = call.alt_seqs[allele_idx - 1];
    switch (classify_variant(call.ref_seq, alt)) {
        case VariantClass::Substitution:
            track.push_back(base_allele(alt[0]));
            break;
        case VariantClass::MultiBaseSubstitution:
            for (char c : alt) track.push_back(base_allele(c));
            break;
        case VariantClass::Insertion:
            track.push_back(insertion_after(base_allele(call.ref_seq[0])));
            break;
        case VariantClass::Deletion:
            track.push_back(base_allele(call.ref_seq[0]));
            for (size_t i = 1; i < span; ++i) track.push_back(Allele::DEL);
            break;
        case VariantClass::Unsupported:
            throw DataError("unsupported variant shape at position " + std::to_string(position));
    }
    return track;
}

template <typename EmitPair>
void walk_region(const ReferenceContig& reference, const SampleGenotype& genotype, EmitPair&& emit) {
    const uint64_t start = genotype.region_start;
    const uint64_t end = genotype.region_end;
    if (start < 1 || end < start || end > reference.length())
        throw BoundsError("genotype region [" + std::to_string(start) + ", " + std::to_string(end) +
                          "] outside contig " + reference.name);

    uint64_t pos = start;
    while (pos <= end) {
        auto it = genotype.calls.find(pos);
        if (it == genotype.calls.end()) {
            Allele r = reference.allele_at(pos);
            emit(r, r, pos);
            ++pos;
            continue;
        }
        const GenotypeCall& call = it->second;
        const uint64_t span = call.ref_seq.size();
        if (pos + span - 1 > end)
            throw DataError("call at position " + std::to_string(pos) + " extends past the region end");
        auto t1 = allele_track(call, call.allele1, pos);
        auto t2 = allele_track(call, call.allele2, pos);
        for (uint64_t i = 0; i < span; ++i) emit(t1[i], t2[i], pos + i);
        pos += span;
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

void SamplerParams::validate(uint64_t contig_length) const {
    if (walks < 1) throw ConfigError("sampler: T must be >= 1");
    if (min_len < 1 || min_len > max_len) throw ConfigError("sampler: need 0 < L_inf <= L_sup");
    if (contig_length == 0) throw ConfigError("sampler: empty contig");
    if (start_limit >= contig_length) throw ConfigError("sampler: K must be < contig length");
}

std::pair<Allele, Allele> sample_alleles(const AlleleDistribution& dist, Rng& rng) {
    size_t a = rng.categorical(dist.weights.data(), kAlleleCount);
    size_t b = rng.categorical(dist.weights.data(), kAlleleCount);
    return {static_cast<Allele>(a), static_cast<Allele>(b)};
}

std::vector<Segment> sample_segments(const ChromosomeMatrix& matrix, const SamplerParams& params, CorpusMode mode) {
    const uint64_t n = matrix.length();
    params.validate(n);

    std::vector<Segment> segments;
    for (uint64_t walk = 0; walk < params.walks; ++walk) {
        Rng rng(derive_seed(params.seed, walk));
        uint64_t p = rng.uniform_int(0, params.start_limit);  // 0-based offset
        while (p < n) {
            uint64_t l = rng.uniform_int(params.min_len, params.max_len);
            uint64_t end = std::min(p + l, n);
            uint64_t len = end - p;
            if (len >= params.min_len) {
                Segment seg;
                seg.contig = matrix.contig();
                seg.start = p + 1;
                seg.length = len;
                if (mode == CorpusMode::HaploidReference) {
                    seg.text = matrix.reference().sequence.substr(p, len);
                } else {
                    std::string text;
                    text.reserve(len);
                    for (uint64_t pos = seg.start; pos < seg.start + len; ++pos) {
                        AlleleDistribution dist = matrix.column_distribution(pos);
                        auto [a1, a2] = sample_alleles(dist, rng);
                        utf8_append(text, encode_char(make_snp_token(a1, a2)));
                    }
                    seg.text = std::move(text);
                }
                segments.push_back(std::move(seg));
            }
            p += l;
        }
    }
    return segments;
}

void write_corpus(std::ostream& os, const std::vector<Segment>& segments, const std::string& contig, uint64_t seed) {
    os << "#contig=" << contig << " seed=" << seed << "\n";
    for (const auto& seg : segments) os << seg.text << "\n";
    if (!os) throw IoError("failed writing corpus");
}

std::vector<std::string> read_corpus(std::istream& is) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        lines.push_back(line);
    }
    return lines;
}

std::vector<std::string> load_corpus(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open " + path);
    return read_corpus(is);
}

// ---------------------------------------------------------------------------
// Genotype encoding
// ---------------------------------------------------------------------------

SampleGenotype parse_sample_genotype(std::istream& in) {
    SampleGenotype g;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto cols = split(line, '\t');
        if (cols.size() < 10)
            throw ParseError("genotype VCF needs FORMAT plus one sample column (line " + std::to_string(line_no) +
                             ")");
        if (cols.size() > 10)
            throw ParseError("genotype VCF must carry exactly one sample column (line " + std::to_string(line_no) +
                             ")");
        if (g.contig.empty()) g.contig = cols[0];
        else if (g.contig != cols[0])
            throw ParseError("genotype VCF mixes contigs (line " + std::to_string(line_no) + ")");

        uint64_t pos = 0;
        auto res = std::from_chars(cols[1].data(), cols[1].data() + cols[1].size(), pos);
        if (res.ec != std::errc{} || pos == 0)
            throw ParseError("unparsable position at line " + std::to_string(line_no));

        GenotypeCall call;
        call.ref_seq = cols[3];
        for (auto& alt : split(cols[4], ',')) {
            if (!alt.empty() && alt != ".") call.alt_seqs.push_back(std::move(alt));
        }

        auto format = split(cols[8], ':');
        auto sample = split(cols[9], ':');
        size_t gt_idx = format.size();
        for (size_t i = 0; i < format.size(); ++i) {
            if (format[i] == "GT") gt_idx = i;
        }
        if (gt_idx >= sample.size())
            throw ParseError("no GT field in sample column at line " + std::to_string(line_no));

        std::string gt = sample[gt_idx];
        std::replace(gt.begin(), gt.end(), '|', '/');  // unordered tokens: phased == unphased
        auto alleles = split(gt, '/');
        if (alleles.size() != 2)
            throw ParseError("GT must carry two alleles at line " + std::to_string(line_no));
        if (alleles[0] == "." || alleles[1] == ".") continue;  // uncalled site -> wild-type

        auto parse_allele = [&](const std::string& s) -> uint32_t {
            uint32_t v = 0;
            auto r = std::from_chars(s.data(), s.data() + s.size(), v);
            if (r.ec != std::errc{} || r.ptr != s.data() + s.size() || v > call.alt_seqs.size())
                throw ParseError("bad allele index '" + s + "' at line " + std::to_string(line_no));
            return v;
        };
        call.allele1 = parse_allele(alleles[0]);
        call.allele2 = parse_allele(alleles[1]);
        if (call.allele1 == 0 && call.allele2 == 0) continue;  // homozygous reference
        g.calls.emplace(pos, std::move(call));
    }
    return g;
}

SampleGenotype load_sample_genotype(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    return parse_sample_genotype(in);
}

std::string encode_sample_region(const ReferenceContig& reference, const SampleGenotype& genotype) {
    std::string out;
    out.reserve(genotype.region_end - genotype.region_start + 1);
    walk_region(reference, genotype,
                [&](Allele a1, Allele a2, uint64_t) { utf8_append(out, encode_char(make_snp_token(a1, a2))); });
    return out;
}

std::string encode_sample_region_haploid(const ReferenceContig& reference, const SampleGenotype& genotype, Rng& rng) {
    std::string out;
    out.reserve(genotype.region_end - genotype.region_start + 1);
    uint64_t current_call_end = 0;  // calls pick a side once, spanning all their positions
    bool take_second = false;
    walk_region(reference, genotype, [&](Allele a1, Allele a2, uint64_t pos) {
        if (pos > current_call_end) {
            auto it = genotype.calls.find(pos);
            if (it != genotype.calls.end()) {
                take_second = rng.uniform() < 0.5;
                current_call_end = pos + it->second.ref_seq.size() - 1;
            } else {
                take_second = false;
                current_call_end = pos;
            }
        }
        utf8_append(out, haploid_char(take_second ? a2 : a1));
    });
    return out;
}

std::string haploid_region(const ReferenceContig& reference, uint64_t start, uint64_t end) {
    if (start < 1 || end < start || end > reference.length())
        throw BoundsError("region [" + std::to_string(start) + ", " + std::to_string(end) + "] outside contig " +
                          reference.name);
    return reference.sequence.substr(start - 1, end - start + 1);
}

}  // namespace snp2vec
