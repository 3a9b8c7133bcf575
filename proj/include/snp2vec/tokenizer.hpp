#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "snp2vec/common.hpp"

namespace snp2vec {

// Reserved token ids shared by every tokenizer model.
inline constexpr int32_t kPadId = 0;
inline constexpr int32_t kUnkId = 1;
inline constexpr int32_t kClsId = 2;
inline constexpr int32_t kMaskId = 3;
inline constexpr int32_t kSpecialCount = 4;

struct TokenSequence {
    std::vector<int32_t> ids;
    uint64_t source_length = 0;      // code points in the input text
    uint64_t unk_substitutions = 0;  // characters outside the trained base vocab
};

// ---------------------------------------------------------------------------
// BPE model: dense id<->string vocab plus the ordered merge list. Token
// strings are UTF-8; the atomic unit is a code point, so SNP chars above
// U+00FF merge as single symbols.
// ---------------------------------------------------------------------------

class TokenizerModel {
  public:
    size_t vocab_size() const { return id_to_token_.size(); }
    const std::string& token(int32_t id) const;
    int32_t token_id(const std::string& token) const;  // -1 if absent
    const std::vector<std::pair<std::string, std::string>>& merges() const { return merges_; }

    TokenSequence encode(std::string_view text) const;
    std::string decode(const std::vector<int32_t>& ids) const;

    void save(std::ostream& os) const;
    void save_file(const std::string& path) const;
    static TokenizerModel load(std::istream& is);
    static TokenizerModel load_file(const std::string& path);

    friend TokenizerModel train_bpe(const std::vector<std::string>& corpus, size_t vocab_size);

  private:
    void push_token(const std::string& token);
    void rebuild_merge_index();

    std::vector<std::string> id_to_token_;
    std::unordered_map<std::string, int32_t> token_to_id_;
    std::vector<std::pair<std::string, std::string>> merges_;
    std::unordered_map<uint64_t, int32_t> merge_result_;  // (left<<32|right) -> merged id
    std::vector<std::pair<int32_t, int32_t>> merge_ids_;  // merges_ as id pairs, training order
};

// Greedy pair merging over the corpus until vocab_size is reached or no pair
// occurs at least twice; ties break on the lexicographically smallest
// (left, right) token pair. Segments never merge across line boundaries.
TokenizerModel train_bpe(const std::vector<std::string>& corpus, size_t vocab_size);

// ---------------------------------------------------------------------------
// Window tokenizers used by the benchmark
// ---------------------------------------------------------------------------

// All width-k windows at stride 1; empty when the text is shorter than k.
std::vector<std::string> kmer_tokenize(std::string_view text, size_t k);

// Width-k windows at offsets 0, L, 2L, ...; only complete windows count.
std::vector<std::string> gkm_tokenize(std::string_view text, size_t k, size_t stride);

}  // namespace snp2vec
