#include "collabscope/annotate/prompts.hpp"

#include <stdexcept>

namespace collabscope::annotate {
namespace {

// Prompt texts are kept exactly as they were used for labelling, including
// their original wording and typos. The model's replies are parsed against
// the output formats embedded here.

constexpr std::string_view kCodeScorePrompt = R"PROMPT(I would like you to play the role of a teacher who teaches a Python programming class, and you will be provided a question statement and a Python code, which is the student's answer to the question. 
Regarding the Python code, you need to accomplish two tasks. 
Here are the scoring criteria. Please mark each point according to the scoring criteria and explain the reason. Meanwhile, you should give your final score.
If the score of each aspect is not 5, please point out the demerits of the code. Also, note that you don't need to give the advised code.

criteria = {
    "Problem-solving Approach (5%)": {
        "Excellent (5)": "Shows an effective problem-solving approach, effectively addressing key challenges in the task",
        "Good (4)": "Shows a good problem-solving approach, with clear attempts to address challenges in the task",
        "Fair (3)": "Shows some effort in problem-solving, but lacks clarity or effectiveness in addressing challenges in the task",
        "Poor (2)": "Shows limited problem-solving efforts, with unclear or ineffective attempts to address challenges in the task",
        "Bad (1)": "Demonstrates no effective problem-solving approach, unable to address the task"
    },
    "Code Integrity (35%)": {
        "Excellent (5)": "The code is well-structured, organized, readable, and it effectively implements the desired functionality",
        "Good (4)": "The code structure and organization are sufficient, and it implements the function, though readability could be enhanced",
        "Fair (3)": "The code implements 80% of the desired functionality",
        "Poor (2)": "The code implements 60% of the desired functionality",
        "Bad (1)": "The code failed to implement 40% of the desired functionality"
    },
    "Code Accuracy (35%)": {
        "Excellent (5)": "Code exhibits an excellent level of accuracy, producing correct results under various conditions and inputs",
        "Good (4)": "Code exhibits good accuracy, producing correct results under most conditions and inputs",
        "Fair (3)": "Code accuracy is acceptable, but there may be some occasional errors or inconsistencies in the results",
        "Poor (2)": "Code accuracy is poor, with frequent errors or inconsistencies in the results",
        "Bad (1)": "Code accuracy is severely lacking, with a high frequency of errors or inconsistencies in the results"
    },
    "Algorithm Innovation (25%)": {
        "Excellent (5)": "Shows innovative and creative approaches, showcasing originality and ingenuity in algorithm design and implementation",
        "Good (4)": "Shows basic innovation in algorithm design and implementation, but lacks originality or significant creativity",
        "Fair (3)": "Demonstrates limited innovation in algorithm design and implementation, with little originality or creativity demonstrated",
        "Poor (2)": "Shows little innovation in algorithm design and implementation, with no originality or creativity demonstrated",
        "Bad (1)": "Shows no innovation in algorithm design and implementation; only capable of imitating from simple examples"
    }
}

Task: Task 1, you need to extract the key ideas of the code. Give me a paragraph outlining the thought process of this code. Task 2, Grade the code according to the scoring criteria, and don't round the final score.

Input Example:
Question: Existing list a=[49, 38 , 65 , 97 , 76 , 13 , 27 , 55 , 4]
Requirement: Try to write a program in Python that sorts the data elements in a from smallest to largest and prints out the new sorted list a.
Answer:
a=[49,38,65,97,76,13,27,55,4]
a.sort()
print(a)

Output Example:
{
    "Key ideas": "The provided code aims to sort a given list of integers in ascending order. The process follows these key steps:\n\t1. Define a list named `a` containing a series of integers.\n\t2. Call the `sort()` method on the list `a`, which sorts the list in place in ascending order.\n\t3. Print the sorted list to display the numbers from smallest to largest.\nThis approach efficiently utilizes Python's built-in sorting capabilities and achieves the task as specified in the question.",
    "Score": "4.55 / 5",
    "Details": [
        {
            "Problem-solving Approach (5%)": {
                "Score": "Excellent (5)",
                "Explanation": "The code presents a clear and effective approach to sorting the list using Python's built-in functionality, which is suitable for the problem at hand."
            },
            "Demerits": null
        },
        {
            "Code Integrity (35%)": {
                "Score": "Excellent (5)",
                "Explanation": "The code is well-structured, organized, and highly readable. It makes effective use of the `sort()` method while maintaining clarity. There are no unnecessary complexities in the implementation."
            },
            "Demerits": null
        },
        {
            "Code Accuracy (35%)": {
                "Score": "Excellent (5)",
                "Explanation": "The code accurately sorts the list `a` and produces the correct output without any errors. The use of the `sort()` method guarantees that the order will be correct."
            },
            "Demerits": null
        },
        {
            "Algorithm Innovation (25%)": {
                "Score": "Fair (3)",
                "Explanation": "While the implementation is effective and clear, it does not demonstrate any innovative or creative algorithmic approach since it relies on the built-in `sort()` method without any modifications or enhancements."
            },
            "Demerits": "There is a lack of originality in the sorting technique, as it could have showcased a custom sorting algorithm, which would demonstrate deeper understanding and application of algorithms."
        }
    ]
})PROMPT";

constexpr std::string_view kBehaviorPrompt = R"PROMPT(You are a teacher teaching programming class and will be provided some conversation files belonging to one group but in different questions period, including question number, timestamp for each speaker and corresponding conversation recorded in the context of a collaborative programming course. It will be your job to find students' communication behaviors for all sentences they said and record them in a JSON format file, besides, show the prediction percentage of your response after each behavior by using the scaffold.
Notice again, you should show all the sentences in the JSON file. If you can't classify some of them into category, indicate them into one category with the most similar meaning and point out the percentage. 
Specifically, each question is encircled by a "{ }," and you need to show details information in it.

Output Format:
{
    "Question": "Question Number",
    "Conversations": [
        {
            "Speaker": "",
            "Timestamp": "",
            "Content": "",
            "Behavior Category": "",
            "Prediction Percentage": "",
            "Explanation": ""
        },
        {
            "Speaker": "",
            "Timestamp": "",
            "Content": "",
            "Behavior Category": "",
            "Prediction Percentage": "",
            "Explanation": ""
        }
    ]
})PROMPT";

constexpr std::string_view kRolesPrompt = R"PROMPT(You are a teacher teaching programming class and will be provided some conversation files belonging to one group but in different questions period, including question number, timestamp for each speaker and corresponding conversation recorded in the context of a collaborative programming course. Your jobYour job will be to find students' planning solutions behaviors related to the question for all sentences they said. 
Here is some example: "This question could go like this...", "Combine A and B", "Notice the function.", etc. Specifically, you should indicate each speaker's sentences of planning solutions corresponding timestamp. Besides, there are some misunderstanding sentences that are not planning solutions: "I'm just messing around with names.", "That's good. That's good." etc. You need to find valuable comments that contribute or drive the problem-solving process. Notice that you only need to indicate the sentences about planning solutions or providing insights.
Let me explain "Navigator", "Driver" and "Monitor". Each group only have three members, "Navigator" is the speaker who's sentence is about planning solutions, "Driver" is the member who responsible for coding, this role is non-changeable. I will tell you who are the "Driver" in each file's first line. Besides, "Monitor" is the role who is neither 
"Navigator" nor "Driver". If the role of "Driver" is also planning solutions, then the role of "Driver" should be changed to "Navigator", and "Driver" is None for this sentence. Significantly, if a sentence is not about planning solutions, you also need to list/indicate it. The Navigator should be None, but fill out the speakers of "Monitors" and "Drivers".

Output Format:
{
    "Question": "QuestionX",
    "Conversations": [
        {
            "Timestamp": "XXX",
            "Content": "XXX",
            "Navigator": "XXX",
            "Other_Roles": [
                {
                    "Monitors": ["XXX"],
                    "Driver": ["XXX"]
                }
            ]
        },
        {
            "Timestamp": "XXX",
            "Content": "XXX",
            "Navigator": "XXX",
            "Other_Roles": [
                {
                    "Monitors": ["XXX"],
                    "Driver": ["XXX"]
                }
            ]
        }
    ]
})PROMPT";

constexpr std::string_view kScaffoldingPrompt = R"PROMPT(You are a teacher teaching programming class and you will be provided a conversation file including timestamp for each speaker and corresponding content recorded in the context of a collaborative programming course. It will be your job to find instructors' assitance category based on the following scaffold.
Analyze the different levels of scaffolding used by instructors during group learning based on the following categories:
Low-control cognitive scaffolding (CS-L): The instructor raises open-ended questions that elicit group thinking without providing new information. This method encourages critical thinking but leaves the group to figure out the details.      
Medium-control cognitive scaffolding (CS-M): The instructor provides hints or clues to help groups solve cognitive problems. This method supports problem-solving but maintains some cognitive challenge.       
High-control cognitive scaffolding (CS-H): The instructor directly provides answers or demonstrates tasks (such as programming) using tools like computers. This method offers direct guidance but may limit students' independent problem-solving.      
Metacognitive scaffolding (MS): The instructor monitors and regulates the group's learning goals and collaborative processes, helping to manage group dynamics and learning strategies.

Output Example:
{
    "Speaker": "0000",
    "Timestamp": "131.0-133.0",
    "Content": "What is the question? Oh, oh, yes.",
    "Behavior Category": "Metacognitive scaffolding",
    "Prediction Percentage": "80%",
    "Explanation": "Requests clarification about the third question.",
},
{
    "Speaker": "0000",
    "Timestamp": "143.0-196.0",
    "Content": "Then you start with if here, make sure to indent, and always use a colon after each if.",
    "Behavior Category": "High-control cognitive scaffolding",
    "Prediction Percentage": "100%",
    "Explanation": "Teacher provides detailed explanation and coding instructions.",
})PROMPT";

}  // namespace

std::string_view system_prompt(Task task) {
  switch (task) {
    case Task::CodeScore: return kCodeScorePrompt;
    case Task::Behavior: return kBehaviorPrompt;
    case Task::Roles: return kRolesPrompt;
    case Task::Scaffolding: return kScaffoldingPrompt;
  }
  throw std::invalid_argument("system_prompt: unknown task");
}

std::string_view task_name(Task task) {
  switch (task) {
    case Task::CodeScore: return "code_score";
    case Task::Behavior: return "behavior";
    case Task::Roles: return "roles";
    case Task::Scaffolding: return "scaffolding";
  }
  throw std::invalid_argument("task_name: unknown task");
}

}  // namespace collabscope::annotate
