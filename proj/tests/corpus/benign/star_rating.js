// Five-star rating widget. Hover previews, click commits.
function initRating(root, onChange) {
    var stars = root.querySelectorAll(".star");
    var committed = 0;
    function paint(upTo) {
        for (var i = 0; i < stars.length; i++) {
            stars[i].className = i < upTo ? "star filled" : "star";
        }
    }
    for (var i = 0; i < stars.length; i++) {
        (function (at) {
            stars[at].addEventListener("mouseenter", function () { paint(at + 1); });
            stars[at].addEventListener("click", function () {
                committed = at + 1;
                onChange(committed);
            });
        })(i);
    }
    root.addEventListener("mouseleave", function () { paint(committed); });
}
