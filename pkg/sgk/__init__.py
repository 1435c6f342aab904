# Schubert GIT kit
# Exact coordinates, semistability and quotient charts for the minimal Schubert variety X(w_{r,rq+1})
