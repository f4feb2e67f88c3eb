#include "qpengine/slices.hpp"

namespace qp {

namespace {

void extend_words(const GeneratorSystem& gen, std::vector<int>& seq, int cur_degree,
                  int max_len, int want_degree, std::vector<Word>& out)
{
    if (!seq.empty() && cur_degree == want_degree)
        out.push_back(Word::of(seq));
    if ((int)seq.size() >= max_len)
        return;
    // all letters sit in non-positive degrees, so the degree only drops
    if (cur_degree < want_degree)
        return;
    for (int id = 0; id < gen.size(); ++id) {
        // positions after the first must hold left-representatives
        if (!seq.empty()) {
            if (!gen.is_left_rep(id))
                continue;
            if (gen.letter(seq.back()).source != gen.letter(id).target)
                continue;
        }
        seq.push_back(id);
        extend_words(gen, seq, cur_degree + gen.letter(id).degree, max_len, want_degree, out);
        seq.pop_back();
    }
}

}  // namespace

std::vector<Word> word_basis(const GeneratorSystem& gen, int degree, int trunc)
{
    std::vector<Word> out;
    if (degree == 0)
        for (int c = 0; c < (int)gen.base().components.size(); ++c)
            for (int b = 0; b < gen.base().components[c].dim(); ++b)
                out.push_back(Word::unit(c, b));
    std::vector<int> seq;
    std::vector<Word> letter_words;
    extend_words(gen, seq, 0, trunc, degree, letter_words);
    std::sort(letter_words.begin(), letter_words.end());
    out.insert(out.end(), letter_words.begin(), letter_words.end());
    return out;
}

SliceMatrix dga_slice(const DGPresentation& p, int degree)
{
    std::vector<Word> rows = word_basis(p.gen, degree, p.trunc);
    std::vector<Word> cols = word_basis(p.gen, degree + 1, p.trunc);
    std::map<Word, int> col_index;
    for (int j = 0; j < (int)cols.size(); ++j)
        col_index[cols[j]] = j;

    SliceMatrix m;
    for (const auto& w : rows)
        m.row_labels.push_back(word_str(p.gen, w));
    for (const auto& w : cols)
        m.col_labels.push_back(word_str(p.gen, w));
    for (int r = 0; r < (int)rows.size(); ++r) {
        TensorElement dv = apply_diff_word(p, rows[r], Scalar(1));
        for (const auto& [w, c] : dv.terms) {
            auto it = col_index.find(w);
            if (it == col_index.end())
                throw EngineError("DegreeError", "differential leaves the slice basis");
            m.set(r, it->second, c);
        }
    }
    return m;
}

ComplexWindow dga_window(const DGPresentation& p, int lo, int hi)
{
    ComplexWindow w;
    w.first_degree = lo;
    for (int n = lo; n <= hi; ++n)
        w.dims.push_back((int)word_basis(p.gen, n, p.trunc).size());
    for (int n = lo; n < hi; ++n)
        w.maps.push_back(dga_slice(p, n));
    return w;
}

}  // namespace qp
