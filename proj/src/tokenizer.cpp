#include "snp2vec/tokenizer.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace snp2vec {

namespace {

constexpr std::array<const char*, kSpecialCount> kSpecialNames = {"[PAD]", "[UNK]", "[CLS]", "[MASK]"};

uint64_t pair_key(int32_t a, int32_t b) {
    return (static_cast<uint64_t>(static_cast<uint32_t>(a)) << 32) | static_cast<uint32_t>(b);
}

// left-to-right replacement of adjacent (a, b) with merged
void apply_merge(std::vector<int32_t>& seq, int32_t a, int32_t b, int32_t merged) {
    size_t write = 0;
    size_t read = 0;
    while (read < seq.size()) {
        if (read + 1 < seq.size() && seq[read] == a && seq[read + 1] == b) {
            seq[write++] = merged;
            read += 2;
        } else {
            seq[write++] = seq[read++];
        }
    }
    seq.resize(write);
}

}  // namespace

const std::string& TokenizerModel::token(int32_t id) const {
    if (id < 0 || static_cast<size_t>(id) >= id_to_token_.size())
        throw BoundsError("token id " + std::to_string(id) + " outside vocab of size " +
                          std::to_string(id_to_token_.size()));
    return id_to_token_[id];
}

int32_t TokenizerModel::token_id(const std::string& token) const {
    auto it = token_to_id_.find(token);
    return it == token_to_id_.end() ? -1 : it->second;
}

void TokenizerModel::push_token(const std::string& token) {
    int32_t id = static_cast<int32_t>(id_to_token_.size());
    id_to_token_.push_back(token);
    token_to_id_.emplace(token, id);
}

void TokenizerModel::rebuild_merge_index() {
    merge_result_.clear();
    merge_ids_.clear();
    for (const auto& [left, right] : merges_) {
        int32_t a = token_id(left);
        int32_t b = token_id(right);
        int32_t merged = token_id(left + right);
        if (a < 0 || b < 0 || merged < 0) throw DataError("merge references a token missing from the vocab");
        merge_result_.emplace(pair_key(a, b), merged);
        merge_ids_.emplace_back(a, b);
    }
}

TokenSequence TokenizerModel::encode(std::string_view text) const {
    std::u32string cps = utf8_decode(text);
    TokenSequence out;
    out.source_length = cps.size();
    out.ids.reserve(cps.size());
    for (char32_t cp : cps) {
        std::string ch;
        utf8_append(ch, cp);
        int32_t id = token_id(ch);
        if (id < 0) {
            ++out.unk_substitutions;
            out.ids.push_back(kUnkId);
        } else {
            out.ids.push_back(id);
        }
    }

    // apply merges in training order; skip merges whose operands cannot occur
    std::vector<uint8_t> present(vocab_size(), 0);
    for (int32_t id : out.ids) present[id] = 1;
    for (size_t m = 0; m < merge_ids_.size(); ++m) {
        auto [a, b] = merge_ids_[m];
        if (!present[a] || !present[b]) continue;
        int32_t merged = merge_result_.at(pair_key(a, b));
        size_t before = out.ids.size();
        apply_merge(out.ids, a, b, merged);
        if (out.ids.size() != before) present[merged] = 1;
    }
    return out;
}

std::string TokenizerModel::decode(const std::vector<int32_t>& ids) const {
    std::string out;
    for (int32_t id : ids) out += token(id);
    return out;
}

TokenizerModel train_bpe(const std::vector<std::string>& corpus, size_t vocab_size) {
    std::vector<std::u32string> lines;
    lines.reserve(corpus.size());
    std::set<char32_t> base_chars;
    for (const auto& text : corpus) {
        std::u32string cps = utf8_decode(text);
        for (char32_t c : cps) base_chars.insert(c);
        if (!cps.empty()) lines.push_back(std::move(cps));
    }
    if (lines.empty()) throw DataError("BPE training corpus is empty");
    if (vocab_size < base_chars.size() + kSpecialCount)
        throw ConfigError("vocab_size " + std::to_string(vocab_size) + " below base alphabet (" +
                          std::to_string(base_chars.size()) + ") plus specials");

    TokenizerModel model;
    for (const char* name : kSpecialNames) model.push_token(name);
    for (char32_t c : base_chars) {
        std::string ch;
        utf8_append(ch, c);
        model.push_token(ch);
    }

    std::vector<std::vector<int32_t>> seqs;
    seqs.reserve(lines.size());
    for (const auto& cps : lines) {
        std::vector<int32_t> ids;
        ids.reserve(cps.size());
        for (char32_t c : cps) {
            std::string ch;
            utf8_append(ch, c);
            ids.push_back(model.token_id(ch));
        }
        seqs.push_back(std::move(ids));
    }

    while (model.vocab_size() < vocab_size) {
        std::unordered_map<uint64_t, uint64_t> counts;
        for (const auto& seq : seqs) {
            for (size_t i = 0; i + 1 < seq.size(); ++i) ++counts[pair_key(seq[i], seq[i + 1])];
        }

        bool found = false;
        uint64_t best_count = 0;
        int32_t best_a = 0, best_b = 0;
        for (const auto& [key, count] : counts) {
            if (count < 2) continue;
            int32_t a = static_cast<int32_t>(key >> 32);
            int32_t b = static_cast<int32_t>(key & 0xFFFFFFFF);
            if (!found || count > best_count ||
                (count == best_count && std::tie(model.id_to_token_[a], model.id_to_token_[b]) <
                                            std::tie(model.id_to_token_[best_a], model.id_to_token_[best_b]))) {
                found = true;
                best_count = count;
                best_a = a;
                best_b = b;
            }
        }
        if (!found) break;

        const std::string merged = model.id_to_token_[best_a] + model.id_to_token_[best_b];
        int32_t merged_id = static_cast<int32_t>(model.vocab_size());
        model.push_token(merged);
        model.merges_.emplace_back(model.id_to_token_[best_a], model.id_to_token_[best_b]);
        for (auto& seq : seqs) apply_merge(seq, best_a, best_b, merged_id);
    }

    model.rebuild_merge_index();
    return model;
}

// ---------------------------------------------------------------------------
// Persistence: '#snp2vec-bpe v1 vocab=<n>', vocab lines '<id>\t<token>',
// then '#merge <left>\t<right>' lines in training order.
// ---------------------------------------------------------------------------

void TokenizerModel::save(std::ostream& os) const {
    os << "#snp2vec-bpe v1 vocab=" << vocab_size() << "\n";
    for (size_t id = 0; id < id_to_token_.size(); ++id) os << id << '\t' << id_to_token_[id] << '\n';
    for (const auto& [left, right] : merges_) os << "#merge " << left << '\t' << right << '\n';
    if (!os) throw IoError("failed writing tokenizer model");
}

void TokenizerModel::save_file(const std::string& path) const {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open " + path + " for writing");
    save(os);
}

TokenizerModel TokenizerModel::load(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ParseError("empty tokenizer file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    size_t declared = 0;
    {
        std::istringstream hdr(line);
        std::string magic, version, vocab_kv;
        hdr >> magic >> version >> vocab_kv;
        if (magic != "#snp2vec-bpe" || version != "v1" || vocab_kv.rfind("vocab=", 0) != 0)
            throw ParseError("not a snp2vec-bpe v1 tokenizer file");
        declared = std::stoull(vocab_kv.substr(6));
    }

    TokenizerModel model;
    size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.rfind("#merge ", 0) == 0) {
            std::string body = line.substr(7);
            size_t tab = body.find('\t');
            if (tab == std::string::npos) throw ParseError("malformed merge at line " + std::to_string(line_no));
            model.merges_.emplace_back(body.substr(0, tab), body.substr(tab + 1));
        } else {
            size_t tab = line.find('\t');
            if (tab == std::string::npos) throw ParseError("malformed vocab entry at line " + std::to_string(line_no));
            size_t id = std::stoull(line.substr(0, tab));
            if (id != model.id_to_token_.size())
                throw ParseError("vocab ids must be dense and ordered (line " + std::to_string(line_no) + ")");
            model.push_token(line.substr(tab + 1));
        }
    }
    if (model.vocab_size() != declared)
        throw ParseError("tokenizer vocab size mismatch: header says " + std::to_string(declared) + ", file has " +
                         std::to_string(model.vocab_size()));
    model.rebuild_merge_index();
    return model;
}

TokenizerModel TokenizerModel::load_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open " + path);
    return load(is);
}

// ---------------------------------------------------------------------------
// Window tokenizers
// ---------------------------------------------------------------------------

std::vector<std::string> kmer_tokenize(std::string_view text, size_t k) {
    if (k < 1) throw ConfigError("k-mer width must be >= 1");
    std::u32string cps = utf8_decode(text);
    std::vector<std::string> out;
    if (cps.size() < k) return out;
    out.reserve(cps.size() - k + 1);
    for (size_t i = 0; i + k <= cps.size(); ++i) out.push_back(utf8_encode(cps.substr(i, k)));
    return out;
}

std::vector<std::string> gkm_tokenize(std::string_view text, size_t k, size_t stride) {
    if (k < 1 || stride < 1) throw ConfigError("gapped k-mer needs k >= 1 and stride >= 1");
    std::u32string cps = utf8_decode(text);
    std::vector<std::string> out;
    if (cps.size() < k) return out;
    for (size_t start = 0; start + k <= cps.size(); start += stride) out.push_back(utf8_encode(cps.substr(start, k)));
    return out;
}

}  // namespace snp2vec
