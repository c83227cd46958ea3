#pragma once

#include <memory>
#include <stdexcept>
#include <string>

#include "grfstream/learners/hoeffding_tree.hpp"
#include "grfstream/learners/knn.hpp"
#include "grfstream/learners/learner.hpp"
#include "grfstream/learners/linear.hpp"
#include "grfstream/learners/naive_bayes.hpp"

namespace grfstream {

inline std::unique_ptr<OnlineLearner> make_learner(const LearnerParams& params) {
    params.validate();
    switch (params.kind) {
        case LearnerKind::knn: return std::make_unique<KnnLearner>(params);
        case LearnerKind::gaussian_nb: return std::make_unique<GaussianNbLearner>(params);
        case LearnerKind::multinomial_nb:
            return std::make_unique<MultinomialNbLearner>(params);
        case LearnerKind::perceptron: return std::make_unique<PerceptronLearner>(params);
        case LearnerKind::passive_aggressive:
            return std::make_unique<PassiveAggressiveLearner>(params);
        case LearnerKind::sgd_linear: return std::make_unique<SgdLinearLearner>(params);
        case LearnerKind::hoeffding_tree:
            return std::make_unique<HoeffdingTreeLearner>(params);
    }
    throw std::invalid_argument("make_learner: unknown learner kind");
}

inline const char* learner_name(LearnerKind kind) {
    switch (kind) {
        case LearnerKind::knn: return "knn";
        case LearnerKind::gaussian_nb: return "gnb";
        case LearnerKind::multinomial_nb: return "mnb";
        case LearnerKind::perceptron: return "perceptron";
        case LearnerKind::passive_aggressive: return "pa";
        case LearnerKind::sgd_linear: return "sgd";
        case LearnerKind::hoeffding_tree: return "ht";
    }
    return "unknown";
}

inline LearnerKind learner_kind_from_name(const std::string& name) {
    if (name == "knn") return LearnerKind::knn;
    if (name == "gnb") return LearnerKind::gaussian_nb;
    if (name == "mnb") return LearnerKind::multinomial_nb;
    if (name == "perceptron") return LearnerKind::perceptron;
    if (name == "pa") return LearnerKind::passive_aggressive;
    if (name == "sgd") return LearnerKind::sgd_linear;
    if (name == "ht") return LearnerKind::hoeffding_tree;
    throw std::invalid_argument("unknown learner name: " + name);
}

inline HtLeafPrediction ht_leaf_from_name(const std::string& name) {
    if (name == "nba") return HtLeafPrediction::nb_adaptive;
    if (name == "nb") return HtLeafPrediction::naive_bayes;
    if (name == "mc") return HtLeafPrediction::majority_class;
    throw std::invalid_argument("unknown ht leaf prediction: " + name);
}

} // namespace grfstream
