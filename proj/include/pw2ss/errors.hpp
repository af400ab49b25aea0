#pragma once

#include <stdexcept>
#include <string>

namespace pw2ss {

/// Base class for all pw2ss errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define PW2SS_DEFINE_ERROR(Name)                                   \
    class Name : public Error {                                    \
    public:                                                        \
        explicit Name(const std::string& what) : Error(what) {}    \
    }

// gui_core
PW2SS_DEFINE_ERROR(MalformedDocument);
PW2SS_DEFINE_ERROR(EmptyHierarchy);

// label_gen
PW2SS_DEFINE_ERROR(DisjointInputs);
PW2SS_DEFINE_ERROR(EmptyPatch);
PW2SS_DEFINE_ERROR(DegenerateDataset);

// det_metrics
PW2SS_DEFINE_ERROR(LengthMismatch);

// nn_core
PW2SS_DEFINE_ERROR(ShapeMismatch);
PW2SS_DEFINE_ERROR(NotScalarLoss);
PW2SS_DEFINE_ERROR(VersionMismatch);
PW2SS_DEFINE_ERROR(MissingParameter);

// screen_transformer
PW2SS_DEFINE_ERROR(SequenceTooLong);
PW2SS_DEFINE_ERROR(NoMaskableTokens);
PW2SS_DEFINE_ERROR(LayoutTokenQueried);
PW2SS_DEFINE_ERROR(InvalidPair);
PW2SS_DEFINE_ERROR(EmptyIndex);

// cli / io
PW2SS_DEFINE_ERROR(IoFailure);
PW2SS_DEFINE_ERROR(ConfigError);
PW2SS_DEFINE_ERROR(MalformedRecord);

#undef PW2SS_DEFINE_ERROR

} // namespace pw2ss
