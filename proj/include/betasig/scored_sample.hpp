#pragma once

namespace betasig {

/// One observation from a binary classifier: the model's probability for
/// class 1 and the true label.
struct ScoredSample {
    double score; // in [0, 1]
    int label;    // 0 or 1
};

/// Throws DataError unless score is finite in [0,1] and label is 0/1.
void validate_sample(const ScoredSample& s);

} // namespace betasig
